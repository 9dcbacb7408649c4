#include "slitflow/runconfig.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace slitflow::cli {

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  c.domain = conformal::domain_from_name(j.value("domain", "disk"));
  if (j.contains("preset")) c.preset = j.at("preset").get<std::string>();
  if (j.contains("b")) {
    const auto& b = j.at("b");
    if (!b.is_array() || b.size() != 4) {
      throw std::invalid_argument("config: \"b\" must be an array of 4 reals");
    }
    for (std::size_t i = 0; i < 4; ++i) c.b[i] = b[i].get<double>();
  }
  if (j.contains("sigma")) {
    const auto& s = j.at("sigma");
    if (!s.is_array() || s.size() != 3) {
      throw std::invalid_argument("config: \"sigma\" must be an array of 3 reals");
    }
    for (std::size_t i = 0; i < 3; ++i) c.sigma[i] = s[i].get<double>();
  }
  if (j.contains("driver")) {
    const auto& d = j.at("driver");
    c.driver.type = d.value("type", "brownian");
    c.driver.kappa = d.value("kappa", 0.0);
    c.driver.mu = d.value("mu", 0.0);
    c.driver.c = d.value("c", 0.0);
    c.driver.theta = d.value("theta", 0.0);
    c.driver.seed = d.value("seed", std::uint64_t{0});
    c.driver.stream = d.value("stream", std::uint64_t{0});
    c.driver.dt = d.value("dt", 1e-3);
  }
  c.T = j.value("T", 1.0);
  c.trace_epsilon = j.value("trace_epsilon", 1e-3);
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    c.grid.kind = g.value("kind", "disk");
    c.grid.n = g.value("n", std::size_t{50});
    c.grid.radius = g.value("radius", 0.9);
    c.grid.re0 = g.value("re0", -2.0);
    c.grid.re1 = g.value("re1", 2.0);
    c.grid.im0 = g.value("im0", 0.25);
    c.grid.im1 = g.value("im1", 2.0);
    c.grid.nx = g.value("nx", std::size_t{10});
    c.grid.ny = g.value("ny", std::size_t{5});
  }
  c.output = j.value("output", "out");
  c.threads = j.value("threads", 0u);
  return c;
}

json RunConfig::to_json() const {
  json j{{"domain", conformal::domain_name(domain)},
         {"b", {b[0], b[1], b[2], b[3]}},
         {"sigma", {sigma[0], sigma[1], sigma[2]}},
         {"driver",
          {{"type", driver.type},
           {"kappa", driver.kappa},
           {"mu", driver.mu},
           {"c", driver.c},
           {"theta", driver.theta},
           {"seed", driver.seed},
           {"stream", driver.stream},
           {"dt", driver.dt}}},
         {"T", T},
         {"trace_epsilon", trace_epsilon},
         {"grid",
          {{"kind", grid.kind},
           {"n", grid.n},
           {"radius", grid.radius},
           {"re0", grid.re0},
           {"re1", grid.re1},
           {"im0", grid.im0},
           {"im1", grid.im1},
           {"nx", grid.nx},
           {"ny", grid.ny}}},
         {"output", output},
         {"threads", threads}};
  if (preset) j["preset"] = *preset;
  return j;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }
  return from_json(j);
}

fields::SlitField RunConfig::slit_field() const {
  if (preset) {
    return stochastic::preset_fields(stochastic::preset_from_name(*preset), domain).first;
  }
  return fields::SlitField(b[0], b[1], b[2], b[3], domain);
}

fields::CompleteField RunConfig::complete_field() const {
  if (preset) {
    return stochastic::preset_fields(stochastic::preset_from_name(*preset), domain).second;
  }
  return fields::CompleteField{sigma[0], sigma[1], sigma[2], domain};
}

driving::DrivingPath RunConfig::make_driver() const {
  const driving::RandomSeed seed{driver.seed, driver.stream};
  if (driver.type == "brownian") {
    return driving::brownian_path(driver.kappa, driver.dt, T, seed);
  }
  if (driver.type == "constant0") return driving::constant_path(driver.dt, T);
  if (driver.type == "linear") return driving::linear_path(driver.mu, driver.dt, T);
  if (driver.type == "sqrt") return driving::sqrt_path(driver.c, driver.dt, T);
  if (driver.type == "tangent_angle") {
    return driving::tangent_angle_path(driver.theta, driver.dt, T);
  }
  throw std::invalid_argument("config: unknown driver type \"" + driver.type + "\"");
}

chain::ChainSpec RunConfig::make_chain_spec() const {
  return chain::ChainSpec(slit_field(), complete_field(), make_driver());
}

std::vector<Complex> RunConfig::make_grid() const {
  std::vector<Complex> pts;
  if (grid.kind == "disk") {
    // polar rings, innermost radius half of the outer
    const std::size_t rings = std::max<std::size_t>(1, grid.n / 10);
    const std::size_t per_ring = std::max<std::size_t>(1, grid.n / rings);
    for (std::size_t r = 0; r < rings && pts.size() < grid.n; ++r) {
      const double rad = grid.radius * (0.5 + 0.5 * static_cast<double>(r + 1) /
                                                  static_cast<double>(rings));
      for (std::size_t k = 0; k < per_ring && pts.size() < grid.n; ++k) {
        const double ang =
            2.0 * kPi * (static_cast<double>(k) + 0.25) / static_cast<double>(per_ring);
        pts.push_back(std::polar(rad, ang));
      }
    }
    if (domain != conformal::CanonicalDomain::Disk) {
      const auto iso = conformal::canonical_iso(domain, conformal::CanonicalDomain::Disk);
      for (auto& z : pts) z = iso.apply_inverse(z);
    }
    return pts;
  }
  if (grid.kind == "rect") {
    for (std::size_t iy = 0; iy < grid.ny; ++iy) {
      for (std::size_t ix = 0; ix < grid.nx; ++ix) {
        const double x = grid.re0 + (grid.re1 - grid.re0) * (static_cast<double>(ix) + 0.5) /
                                        static_cast<double>(grid.nx);
        const double y = grid.im0 + (grid.im1 - grid.im0) * (static_cast<double>(iy) + 0.5) /
                                        static_cast<double>(grid.ny);
        pts.emplace_back(x, y);
      }
    }
    for (const auto& z : pts) {
      if (!conformal::domain_contains(domain, z)) {
        throw std::invalid_argument("config: rect grid point outside the domain");
      }
    }
    return pts;
  }
  throw std::invalid_argument("config: unknown grid kind \"" + grid.kind + "\"");
}

bool operator==(const DriverConfig& a, const DriverConfig& b) {
  return a.type == b.type && a.kappa == b.kappa && a.mu == b.mu && a.c == b.c &&
         a.theta == b.theta && a.seed == b.seed && a.stream == b.stream && a.dt == b.dt;
}

bool operator==(const GridConfig& a, const GridConfig& b) {
  return a.kind == b.kind && a.n == b.n && a.radius == b.radius && a.re0 == b.re0 &&
         a.re1 == b.re1 && a.im0 == b.im0 && a.im1 == b.im1 && a.nx == b.nx && a.ny == b.ny;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.domain == b.domain && a.preset == b.preset && a.b == b.b && a.sigma == b.sigma &&
         a.driver == b.driver && a.T == b.T && a.trace_epsilon == b.trace_epsilon &&
         a.grid == b.grid && a.output == b.output && a.threads == b.threads;
}

}  // namespace slitflow::cli
