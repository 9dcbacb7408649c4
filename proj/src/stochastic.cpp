#include "slitflow/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "slitflow/parallel.hpp"

namespace slitflow::stochastic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SdeTrajectory {
  Complex value;
  bool alive = true;
  double death_time = kInf;
};

/// One point through the whole horizon.  record(i, value) is called for each
/// driver grid index reached (i = 0 .. n).
template <typename Record>
SdeTrajectory run_point(const SlitField& b, const CompleteField& sigma, const SdeConfig& config,
                        const driving::DrivingPath& u, Complex z0, double T, Record&& record) {
  const CanonicalDomain dom = b.domain;
  const Complex pole = conformal::marked_boundary_point(dom);
  const bool heun = config.scheme == SdeScheme::StratonovichHeun;

  auto sigma_of = [&](const Complex& z) { return sigma.eval(z); };
  auto drift_ito = [&](const Complex& z) {
    return -b.eval(z) + 0.5 * config.kappa * sigma.eval(z) * sigma.derivative(z);
  };
  auto drift_strat = [&](const Complex& z) { return -b.eval(z); };

  SdeTrajectory out;
  Complex g = z0;
  record(0, g);

  const auto& times = u.times();
  double t = 0.0;
  std::size_t i = 0;  // driver interval index
  while (t < T - 1e-15) {
    const double t_next = std::min(times[i + 1], T);
    // proximity-capped sub-stepping within the driver interval
    while (t < t_next - 1e-15) {
      const double dist = std::abs(g - pole);
      if (dist < config.epsilon_blowup || !conformal::domain_contains(dom, g, -1e-9)) {
        out.alive = false;
        out.death_time = t;
        out.value = g;
        return out;
      }
      double h = t_next - t;
      const double speed = std::abs(b.eval(g)) + std::sqrt(config.kappa) * std::abs(sigma.eval(g));
      double cap = config.pole_step_factor * dist;
      if (speed > 0.0) cap = std::min(cap, config.pole_step_factor * dist / speed);
      h = std::min(h, std::max(cap, 1e-12));
      const double du = u.value(t + h) - u.value(t);

      if (heun) {
        const Complex f0 = drift_strat(g);
        const Complex s0 = sigma_of(g);
        const Complex pred = g + f0 * h + s0 * du;
        if (!is_finite(pred) || std::abs(pred - pole) < config.epsilon_blowup ||
            !conformal::domain_contains(dom, pred, -1e-6)) {
          out.alive = false;
          out.death_time = t;
          out.value = g;
          return out;
        }
        g += 0.5 * (f0 + drift_strat(pred)) * h + 0.5 * (s0 + sigma_of(pred)) * du;
      } else {
        g += drift_ito(g) * h + sigma_of(g) * du;
      }
      if (!is_finite(g)) {
        out.alive = false;
        out.death_time = t;
        out.value = g;
        return out;
      }
      t += h;
    }
    t = t_next;
    if (i + 1 < times.size() && std::abs(t - times[i + 1]) < 1e-15) {
      ++i;
      record(i, g);
      if (i + 1 >= times.size()) break;
    } else if (t >= T - 1e-15) {
      break;
    }
  }
  out.value = g;
  return out;
}

}  // namespace

const char* preset_name(Preset p) {
  switch (p) {
    case Preset::Chordal: return "chordal";
    case Preset::Radial: return "radial";
    case Preset::Dipolar: return "dipolar";
    case Preset::ABP: return "abp";
    case Preset::RadialB_ChordalSigma: return "radialb_chordalsigma";
  }
  return "?";
}

Preset preset_from_name(const std::string& name) {
  if (name == "chordal") return Preset::Chordal;
  if (name == "radial") return Preset::Radial;
  if (name == "dipolar") return Preset::Dipolar;
  if (name == "abp") return Preset::ABP;
  if (name == "radialb_chordalsigma" || name == "example2") return Preset::RadialB_ChordalSigma;
  throw std::invalid_argument("unknown preset: " + name);
}

CanonicalDomain preset_default_domain(Preset p) {
  switch (p) {
    case Preset::Chordal: return CanonicalDomain::HalfPlane;
    case Preset::Dipolar: return CanonicalDomain::Strip;
    default: return CanonicalDomain::Disk;
  }
}

std::pair<SlitField, CompleteField> preset_fields(Preset p, CanonicalDomain domain) {
  switch (p) {
    case Preset::Chordal:
      return {SlitField(2.0, 0.0, 0.0, 0.0, domain), CompleteField{1.0, 0.0, 0.0, domain}};
    case Preset::Radial:
      return {SlitField(2.0, 0.0, 0.5, 0.0, domain), CompleteField{1.0, 0.0, 0.25, domain}};
    case Preset::Dipolar:
      return {SlitField(2.0, 0.0, -0.5, 0.0, domain), CompleteField{1.0, 0.0, -0.25, domain}};
    case Preset::ABP:
      return {SlitField(2.0, 0.0, 0.0, 0.0, domain), CompleteField{1.0, 0.0, 0.25, domain}};
    case Preset::RadialB_ChordalSigma:
      return {SlitField(2.0, 0.0, 0.5, 0.0, domain), CompleteField{1.0, 0.0, 0.0, domain}};
  }
  throw std::logic_error("preset_fields: unreachable");
}

fields::FieldFn ito_drift(const SlitField& b, const CompleteField& sigma, double kappa) {
  return [b, sigma, kappa](const Complex& z) {
    return -b.eval(z) + 0.5 * kappa * sigma.eval(z) * sigma.derivative(z);
  };
}

SdePathSet simulate_flow(const SlitField& b, const CompleteField& sigma, const SdeConfig& config,
                         std::span<const Complex> points, double T) {
  const auto driver = driving::brownian_path(config.kappa, config.dt, T, config.seed);
  return simulate_flow_with_driver(b, sigma, config, driver, points, T);
}

SdePathSet simulate_flow_with_driver(const SlitField& b, const CompleteField& sigma,
                                     const SdeConfig& config, const driving::DrivingPath& driver,
                                     std::span<const Complex> points, double T) {
  if (b.domain != sigma.domain) {
    throw std::invalid_argument("simulate_flow: b and sigma must share a domain");
  }
  if (driver.horizon() < T - 1e-12) {
    throw std::invalid_argument("simulate_flow: driver horizon shorter than T");
  }

  SdePathSet out;
  out.driver = driver;
  const auto& times = driver.times();
  std::size_t n_keep = 0;
  while (n_keep + 1 < times.size() && times[n_keep] < T - 1e-15) ++n_keep;
  out.times.assign(times.begin(), times.begin() + static_cast<std::ptrdiff_t>(n_keep + 1));

  out.values.assign(points.size(), {});
  out.alive.assign(points.size(), 1);
  out.explosion_time.assign(points.size(), kInf);

  parallel_for(
      points.size(),
      [&](std::size_t ip) {
        auto& row = out.values[ip];
        row.assign(out.times.size(), Complex{0.0, 0.0});
        bool dead_fill = false;
        const auto traj = run_point(b, sigma, config, driver, points[ip], T,
                                    [&](std::size_t i, const Complex& g) {
                                      if (i < row.size()) row[i] = g;
                                    });
        out.alive[ip] = traj.alive ? 1 : 0;
        out.explosion_time[ip] = traj.death_time;
        if (!traj.alive) {
          // freeze the last live value over the remaining grid
          std::size_t last = driver.interval_index(traj.death_time) + 1;
          for (std::size_t i = std::min(last, row.size()); i < row.size(); ++i) {
            row[i] = traj.value;
          }
          (void)dead_fill;
        }
      },
      config.threads);
  return out;
}

CompositionReport composition_check(const SlitField& b, const CompleteField& sigma,
                                    const SdeConfig& config, std::span<const Complex> points,
                                    double T, std::size_t sample_stride) {
  const auto driver = driving::brownian_path(config.kappa, config.dt, T, config.seed);
  const auto sde = simulate_flow_with_driver(b, sigma, config, driver, points, T);

  chain::ChainSpec spec(b, sigma, driver);
  chain::SolverOptions copts;
  copts.threads = config.threads;

  CompositionReport rep;
  std::vector<Complex> current(points.begin(), points.end());
  std::vector<char> alive(points.size(), 1);

  double prev_t = 0.0;
  for (std::size_t i = sample_stride; i < sde.times.size(); i += sample_stride) {
    const double t = sde.times[i];
    const auto st = chain::evolve_window(spec, current, prev_t, t, copts);
    for (std::size_t p = 0; p < current.size(); ++p) {
      if (!alive[p]) continue;
      if (!st.alive[p] || !sde.alive[p] || sde.explosion_time[p] <= t) {
        alive[p] = 0;
        continue;
      }
      current[p] = st.values[p];
      const Complex composed = autoflow::flow_apply(sigma, driver.value(t), current[p]);
      rep.max_discrepancy = std::max(rep.max_discrepancy, std::abs(sde.values[p][i] - composed));
      ++rep.compared;
    }
    prev_t = t;
    if (std::none_of(alive.begin(), alive.end(), [](char a) { return a != 0; })) break;
  }
  if (rep.compared == 0) {
    throw std::runtime_error("composition_check: no surviving comparison points");
  }
  return rep;
}

}  // namespace slitflow::stochastic
