#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace slitflow::driving {

/// Keyed source of reproducible Brownian increments: identical (seed, stream)
/// reproduce identical paths bit-exactly, independent streams run in
/// parallel without shared state.
struct RandomSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Standard normal draw keyed by (seed, stream, index); counter-based, no
/// generator state.
double standard_normal(const RandomSeed& seed, std::uint64_t index);

/// Continuous real driving path u_t, sampled, with fixed linear
/// interpolation between samples.  times[0] == 0, values[0] == 0, times
/// strictly increasing.
class DrivingPath {
 public:
  DrivingPath() = default;
  DrivingPath(std::vector<double> times, std::vector<double> values);

  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return times_.size(); }
  double horizon() const { return times_.empty() ? 0.0 : times_.back(); }

  /// Linearly interpolated value; clamps outside the sampled range.
  double value(double t) const;

  /// Index of the sample interval containing t (last interval for t beyond
  /// the end).
  std::size_t interval_index(double t) const;

 private:
  std::vector<double> times_;
  std::vector<double> values_;
};

/// Brownian driver u_t = sqrt(kappa) B_t sampled on a uniform grid of step
/// dt up to horizon T.  kappa = 0 gives the zero path.
DrivingPath brownian_path(double kappa, double dt, double T, const RandomSeed& seed);

DrivingPath constant_path(double dt, double T);
DrivingPath linear_path(double mu, double dt, double T);          // u_t = mu t
DrivingPath sqrt_path(double c, double dt, double T);             // u_t = c sqrt(t)
/// u_t = c sqrt(t) with c = 2 (pi - 2 theta)/sqrt(theta (pi - theta));
/// theta in (0, pi) is the tangent angle of the initial slit.
DrivingPath tangent_angle_path(double theta, double dt, double T);

/// sup over sampled pairs with |t - s| <= window of |u_t - u_s| / sqrt|t - s|.
double holder_half_seminorm(const DrivingPath& u, double window);

// --- pathwise utilities used by the transformation calculus ---

/// u -> s * u (same grid).
DrivingPath scale_values(const DrivingPath& u, double s);
/// u_t -> u_{c t}; the resampled grid keeps the original step so chains can
/// be compared on a common grid.  New horizon is T / c.
DrivingPath time_scale(const DrivingPath& u, double c);
/// u_t -> u_t + c t.
DrivingPath add_drift(const DrivingPath& u, double c);
/// Keep every k-th sample: a coarser grid whose increments are the exact
/// sums of the fine increments.
DrivingPath downsample(const DrivingPath& u, std::size_t k);

void save_csv(const DrivingPath& u, const std::string& path);
DrivingPath load_csv(const std::string& path);

}  // namespace slitflow::driving
