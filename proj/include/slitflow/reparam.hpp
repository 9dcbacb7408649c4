#pragma once

#include <vector>

#include "slitflow/chain.hpp"

namespace slitflow::reparam {

/// Radial description of a slit chain while the origin stays outside the
/// hull: monotone time change lambda with lambda(0) = 0 and a continuous
/// (branch-unwrapped) radial driver u~ indexed by radial time.
struct RadialReduction {
  std::vector<double> times;          // original chain times
  std::vector<double> lambda;         // radial times lambda(t_i)
  std::vector<double> u_tilde;        // radial driver at lambda(t_i)
  std::vector<Complex> center;        // g_t(0) in disk coordinates
  std::vector<Complex> center_deriv;  // g_t'(0) in disk coordinates
  double T_max = 0.0;                 // horizon: first origin-explosion time, or T
  bool origin_survived = true;

  driving::DrivingPath radial_driver() const;
};

/// Reduce a normalized chain to the radial one over [0, T] (truncated with a
/// margin if the hull reaches the origin first).  Samples on the sample_dt
/// grid; lambda is integrated jointly with g_t(0) and g_t'(0).
RadialReduction to_radial(const chain::ChainSpec& spec, double T, double sample_dt,
                          const chain::SolverOptions& opts = {});

/// State of the chain-to-chain correspondence ODE: the matching automorphism
/// path M_t = e^{i Theta_t}(z - A_t)/(1 - conj(A_t) z) plus the induced time
/// change and target driver.
struct CrossReparamState {
  std::vector<double> times;
  std::vector<Complex> A;
  std::vector<double> Theta;
  std::vector<double> lambda;
  std::vector<double> u_tilde;
  bool hit_horizon = false;  // |A| approached 1 before the requested time
  double T_reached = 0.0;

  driving::DrivingPath target_driver() const;  // (lambda, u_tilde)
};

/// Integrate the matching ODE between the chain of `spec` and the target
/// pair (target_b, target_sigma); both pairs must be normalized.  Local
/// existence only: integration stops when |A| reaches 0.999.
CrossReparamState cross_reparam(const chain::ChainSpec& spec, const fields::SlitField& target_b,
                                const fields::CompleteField& target_sigma, double T_hint,
                                double sample_dt, const chain::SolverOptions& opts = {});

/// Realized quadratic variation of the radial driver per unit radial time:
/// sum (delta u~)^2 / lambda(T).  Unbiased for kappa up to O(dt) drift
/// contamination.
double kappa_estimate(const RadialReduction& red);

struct PhaseReport {
  bool simple = false;
  double min_nonadjacent_gap = 0.0;
  double box_dim_estimate = 0.0;
  double resolution = 0.0;
};

/// Geometry probe of a sampled trace: minimum distance between sample pairs
/// more than `window` indices apart, a self-touch flag at the given
/// resolution (default: the trace regularization offset), and a coarse
/// box-counting dimension over three dyadic scales.
PhaseReport phase_probe(const chain::Trace& trace, std::size_t window = 5,
                        double resolution = 0.0, unsigned threads = 0);

}  // namespace slitflow::reparam
