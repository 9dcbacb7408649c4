#include "slitflow/driving.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "slitflow/complex_types.hpp"

namespace slitflow::driving {

namespace {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline double to_unit_open(std::uint64_t bits) {
  // (0, 1): 53 significant bits, shifted away from zero
  return (static_cast<double>(bits >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

std::size_t grid_steps(double dt, double T) {
  if (!(dt > 0.0) || !(T > 0.0)) {
    throw std::invalid_argument("driving path: dt and T must be positive");
  }
  const auto n = static_cast<std::size_t>(std::ceil(T / dt - 1e-9));
  return std::max<std::size_t>(n, 1);
}

std::vector<double> uniform_times(double dt, double T, std::size_t n) {
  std::vector<double> t(n + 1);
  for (std::size_t i = 0; i <= n; ++i) t[i] = std::min(static_cast<double>(i) * dt, T);
  t.back() = T;
  return t;
}

}  // namespace

double standard_normal(const RandomSeed& seed, std::uint64_t index) {
  // two decorrelated streams of bits from the (seed, stream, index) key
  const std::uint64_t k0 = splitmix64(seed.seed ^ splitmix64(seed.stream ^ 0x5bf03635ce4c0f5bULL));
  const std::uint64_t b1 = splitmix64(k0 ^ splitmix64(index));
  const std::uint64_t b2 = splitmix64(b1 ^ 0x7c159e1aa7e6d9a1ULL);
  const double u1 = to_unit_open(b1);
  const double u2 = to_unit_open(b2);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

DrivingPath::DrivingPath(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() != values_.size() || times_.size() < 2) {
    throw std::invalid_argument("driving path: need matching times/values with >= 2 samples");
  }
  if (times_.front() != 0.0) throw std::invalid_argument("driving path: times must start at 0");
  if (values_.front() != 0.0) throw std::invalid_argument("driving path: u(0) must be 0");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1])) {
      throw std::invalid_argument("driving path: times must be strictly increasing");
    }
  }
}

double DrivingPath::value(double t) const {
  if (times_.empty()) return 0.0;
  if (t <= times_.front()) return values_.front();
  if (t >= times_.back()) return values_.back();
  const std::size_t i = interval_index(t);
  const double t0 = times_[i], t1 = times_[i + 1];
  const double w = (t - t0) / (t1 - t0);
  return values_[i] + w * (values_[i + 1] - values_[i]);
}

std::size_t DrivingPath::interval_index(double t) const {
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const auto idx = static_cast<std::size_t>(std::distance(times_.begin(), it));
  if (idx == 0) return 0;
  return std::min(idx - 1, times_.size() - 2);
}

DrivingPath brownian_path(double kappa, double dt, double T, const RandomSeed& seed) {
  if (kappa < 0.0) throw std::invalid_argument("brownian_path: kappa must be >= 0");
  const std::size_t n = grid_steps(dt, T);
  auto times = uniform_times(dt, T, n);
  std::vector<double> values(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double step = times[i + 1] - times[i];
    const double z = standard_normal(seed, i);
    values[i + 1] = values[i] + std::sqrt(kappa * step) * z;
  }
  return DrivingPath(std::move(times), std::move(values));
}

DrivingPath constant_path(double dt, double T) {
  const std::size_t n = grid_steps(dt, T);
  auto times = uniform_times(dt, T, n);
  return DrivingPath(std::move(times), std::vector<double>(n + 1, 0.0));
}

DrivingPath linear_path(double mu, double dt, double T) {
  const std::size_t n = grid_steps(dt, T);
  auto times = uniform_times(dt, T, n);
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = mu * times[i];
  return DrivingPath(std::move(times), std::move(values));
}

DrivingPath sqrt_path(double c, double dt, double T) {
  const std::size_t n = grid_steps(dt, T);
  auto times = uniform_times(dt, T, n);
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = c * std::sqrt(times[i]);
  return DrivingPath(std::move(times), std::move(values));
}

DrivingPath tangent_angle_path(double theta, double dt, double T) {
  if (!(theta > 0.0 && theta < kPi)) {
    throw std::invalid_argument("tangent_angle_path: theta must lie in (0, pi)");
  }
  const double c = 2.0 * (kPi - 2.0 * theta) / std::sqrt(theta * (kPi - theta));
  return sqrt_path(c, dt, T);
}

double holder_half_seminorm(const DrivingPath& u, double window) {
  if (!(window > 0.0)) throw std::invalid_argument("holder_half_seminorm: window must be > 0");
  const auto& t = u.times();
  const auto& v = u.values();
  double sup = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      const double dt = t[j] - t[i];
      if (dt > window) break;
      sup = std::max(sup, std::abs(v[j] - v[i]) / std::sqrt(dt));
    }
  }
  return sup;
}

DrivingPath scale_values(const DrivingPath& u, double s) {
  std::vector<double> values(u.values());
  for (double& v : values) v *= s;
  return DrivingPath(u.times(), std::move(values));
}

DrivingPath time_scale(const DrivingPath& u, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("time_scale: c must be > 0");
  const auto& t = u.times();
  const double dt = t.size() > 1 ? t[1] - t[0] : 1e-3;
  const double T_new = u.horizon() / c;
  const std::size_t n = grid_steps(dt, T_new);
  auto times = uniform_times(dt, T_new, n);
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = u.value(c * times[i]);
  return DrivingPath(std::move(times), std::move(values));
}

DrivingPath add_drift(const DrivingPath& u, double c) {
  std::vector<double> values(u.values());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += c * u.times()[i];
  return DrivingPath(u.times(), std::move(values));
}

DrivingPath downsample(const DrivingPath& u, std::size_t k) {
  if (k < 1) throw std::invalid_argument("downsample: k must be >= 1");
  std::vector<double> times, values;
  for (std::size_t i = 0; i < u.size(); i += k) {
    times.push_back(u.times()[i]);
    values.push_back(u.values()[i]);
  }
  if (times.back() != u.times().back()) {
    times.push_back(u.times().back());
    values.push_back(u.values().back());
  }
  return DrivingPath(std::move(times), std::move(values));
}

void save_csv(const DrivingPath& u, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "t,u\n";
  out.precision(17);
  for (std::size_t i = 0; i < u.size(); ++i) {
    out << u.times()[i] << ',' << u.values()[i] << '\n';
  }
}

DrivingPath load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,u", 0) != 0) {
    throw std::runtime_error("driving path csv: missing 't,u' header in " + path);
  }
  std::vector<double> times, values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',')) {
      throw std::runtime_error("driving path csv: malformed line: " + line);
    }
    times.push_back(std::stod(a));
    values.push_back(std::stod(b));
  }
  return DrivingPath(std::move(times), std::move(values));
}

}  // namespace slitflow::driving
