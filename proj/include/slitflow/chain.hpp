#pragma once

#include <span>
#include <vector>

#include "slitflow/autoflow.hpp"
#include "slitflow/driving.hpp"

namespace slitflow::chain {

using conformal::CanonicalDomain;

struct SolverOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  /// A trajectory is dead once it enters this neighborhood of the moving
  /// singularity (detection time is the recorded explosion time).
  double epsilon_blowup = 1e-6;
  /// Step underflow below this also counts as explosion.
  double h_min = 1e-14;
  double h_init = 1e-4;
  /// Near the pole the time step is capped proportionally to the distance,
  /// both directly and through the local field magnitude.
  double pole_step_factor = 0.5;
  unsigned threads = 0;
};

/// The triple driving a slit chain: slit field b, automorphism generator
/// sigma (sigma_{-1} != 0) and a continuous driving path, all over one
/// canonical domain.
struct ChainSpec {
  std::array<double, 4> b_coef{};  // basis coefficients of b, index -2..1
  bool slit_b = true;              // false in the complete-field diagnostic mode
  fields::CompleteField sigma;
  driving::DrivingPath u;
  CanonicalDomain domain = CanonicalDomain::Disk;

  ChainSpec(const fields::SlitField& b, const fields::CompleteField& sigma_,
            driving::DrivingPath u_);

  /// Diagnostic spec whose driving field is a complete field (no pole, no
  /// explosion); used for the automorphism criterion checks.
  static ChainSpec with_complete_generator(const fields::CompleteField& b_like,
                                           const fields::CompleteField& sigma_,
                                           driving::DrivingPath u_);

  fields::SlitField slit_field() const;
};

/// Per-point evolution record.  Dead points keep the position at detection
/// time; explosion_time is +infinity while alive.
struct ChainState {
  std::vector<Complex> initial;
  std::vector<Complex> values;
  std::vector<char> alive;
  std::vector<double> explosion_time;
  double time = 0.0;
};

struct Trace {
  std::vector<double> times;
  std::vector<Complex> tips;
  std::vector<char> ok;  // backward integration converged for this sample
  double epsilon = 0.0;
};

/// The time-t vector field of the chain: V(t,z) = b(h_{u_t}(z)) / h'_{u_t}(z),
/// evaluated in the spec's own domain.
Complex herglotz_field(const ChainSpec& spec, double t, const Complex& z);

/// Location of the moving singularity of V(t, .) in the spec's domain.
Complex singularity(const ChainSpec& spec, double t);

ChainState evolve(const ChainSpec& spec, std::span<const Complex> points, double T,
                  const SolverOptions& opts = {});

/// Evolution restarted at time t0 from given point values (the evolution
/// family property g_{s,t}).
ChainState evolve_window(const ChainSpec& spec, std::span<const Complex> points, double t0,
                         double T, const SolverOptions& opts = {});

/// g_t'(z0) by joint integration of the variational equation
/// dw/dt = -V'(t, g_t) w.  Throws if z0 explodes before t.
Complex derivative_at(const ChainSpec& spec, const Complex& z0, double t,
                      const SolverOptions& opts = {});

/// Tip curve by backward integration from the regularized singularity
/// preimage w_eps = (1 - eps) h^{-1}_{u_t}(1) (in disk coordinates).
Trace trace(const ChainSpec& spec, double T, double sample_dt, double epsilon = 1e-3,
            const SolverOptions& opts = {});

/// Schwarz-Pick ratio of the inverse map at the disk origin:
/// |(g_t^{-1})'(0)| / (1 - |g_t^{-1}(0)|^2), in (0, 1]; equals 1 exactly when
/// the driving field is complete at almost every time.
double schwarz_pick_ratio(const ChainSpec& spec, double t, const SolverOptions& opts = {});

}  // namespace slitflow::chain
