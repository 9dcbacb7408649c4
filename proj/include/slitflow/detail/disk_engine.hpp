#pragma once

#include <limits>

#include "slitflow/autoflow.hpp"
#include "slitflow/chain.hpp"
#include "slitflow/detail/rk45.hpp"

namespace slitflow::detail {

/// All chain integration happens in disk coordinates: the basis coefficients
/// are invariant under the canonical isomorphisms, so a chain in any domain
/// is the conjugate of the disk chain with the same coefficients and driver.
class DiskEngine {
 public:
  explicit DiskEngine(const chain::ChainSpec& spec)
      : b_coef_(spec.b_coef),
        has_pole_(spec.slit_b),
        sigma_disk_({spec.sigma.sigma_m1, spec.sigma.sigma_0, spec.sigma.sigma_1,
                     conformal::CanonicalDomain::Disk}),
        u_(&spec.u),
        iso_(conformal::canonical_iso(spec.domain, conformal::CanonicalDomain::Disk)),
        identity_domain_(spec.domain == conformal::CanonicalDomain::Disk) {}

  struct Frozen {
    conformal::DiskAutomorphism h;  // flow element at u(t)
    conformal::MobiusMatrix hmat;
    Complex pole;  // h^{-1}(1); meaningless when the engine has no pole
  };

  Frozen frozen(double t) const {
    Frozen f;
    f.hmat = autoflow::flow_matrix(sigma_disk_, u_->value(t));
    f.h = f.hmat.to_automorphism();
    f.pole = f.hmat.inverse().apply(Complex{1.0, 0.0});
    return f;
  }

  Complex field(const Frozen& f, const Complex& w) const {
    const Complex hw = mobius_value(f.h, w);
    return fields::eval_basis(b_coef_, conformal::CanonicalDomain::Disk, hw) /
           conformal::mobius_derivative(f.h, w);
  }

  Complex field_derivative(const Frozen& f, const Complex& w) const {
    const Complex hw = mobius_value(f.h, w);
    const Complex d1 = conformal::mobius_derivative(f.h, w);
    const Complex d2 = conformal::mobius_second_derivative(f.h, w);
    return fields::eval_basis_derivative(b_coef_, conformal::CanonicalDomain::Disk, hw) -
           fields::eval_basis(b_coef_, conformal::CanonicalDomain::Disk, hw) * d2 / (d1 * d1);
  }

  double dist_to_pole(const Frozen& f, const Complex& w) const {
    return has_pole_ ? std::abs(w - f.pole) : std::numeric_limits<double>::infinity();
  }

  bool has_pole() const { return has_pole_; }
  const driving::DrivingPath& path() const { return *u_; }
  const conformal::ConformalMap& iso() const { return iso_; }
  const fields::CompleteField& sigma_disk() const { return sigma_disk_; }

  Complex to_disk(const Complex& z) const { return identity_domain_ ? z : iso_.apply(z); }
  Complex from_disk(const Complex& w) const {
    return identity_domain_ ? w : iso_.apply_inverse(w);
  }

 private:
  // no |z| <= 1 guard: trial RK stages may poke slightly outside the closed
  // disk and get rejected by the error control
  static Complex mobius_value(const conformal::DiskAutomorphism& m, const Complex& z) {
    return std::exp(kImagUnit * m.theta) * (z - m.a) / (1.0 - std::conj(m.a) * z);
  }

  std::array<double, 4> b_coef_;
  bool has_pole_;
  fields::CompleteField sigma_disk_;
  const driving::DrivingPath* u_;
  conformal::ConformalMap iso_;
  bool identity_domain_;
};

struct PointResult {
  Complex value;
  bool alive = true;
  double death_time = std::numeric_limits<double>::infinity();
};

inline StepControl make_control(const chain::SolverOptions& opts) {
  StepControl ctl;
  ctl.rel_tol = opts.rel_tol;
  ctl.abs_tol = opts.abs_tol;
  ctl.h_min = opts.h_min;
  ctl.h_init = opts.h_init;
  return ctl;
}

/// Forward integration of one point with explosion detection; the state is
/// the trajectory alone (N = 1) or trajectory + variational factor (N = 2).
template <std::size_t N>
PointResult integrate_forward(const DiskEngine& eng, CState<N>& y, double t0, double T,
                              const chain::SolverOptions& opts) {
  AdaptiveRk<N> rk(make_control(opts));
  PointResult res;

  auto rhs = [&](double t, const CState<N>& s, CState<N>& ds) {
    const auto f = eng.frozen(t);
    ds[0] = -eng.field(f, s[0]);
    if constexpr (N >= 2) ds[1] = -eng.field_derivative(f, s[0]) * s[1];
  };
  auto cap = [&](double t, const CState<N>& s) -> double {
    if (!eng.has_pole()) return std::numeric_limits<double>::infinity();
    const auto f = eng.frozen(t);
    const double d = eng.dist_to_pole(f, s[0]);
    const double speed = std::abs(eng.field(f, s[0]));
    double c = opts.pole_step_factor * d;
    if (speed > 0.0) c = std::min(c, opts.pole_step_factor * d / speed);
    return c;
  };

  double t = t0;
  const auto& times = eng.path().times();
  std::size_t k = eng.path().interval_index(t0);
  while (t < T - 1e-15 * std::max(1.0, T)) {
    while (k + 1 < times.size() && times[k + 1] <= t + 1e-15) ++k;
    const double t_end = (k + 1 < times.size()) ? std::min(times[k + 1], T) : T;

    bool dead = false;
    auto observer = [&](double tc, const CState<N>& s) {
      const auto f = eng.frozen(tc);
      if (eng.dist_to_pole(f, s[0]) < opts.epsilon_blowup || std::abs(s[0]) > 1.0 + 1e-9) {
        dead = true;
        return false;
      }
      return true;
    };

    const RkStatus st = rk.advance(t, y, t_end, rhs, cap, observer);
    if (dead || st == RkStatus::Underflow) {
      res.alive = false;
      res.death_time = t;
      res.value = y[0];
      return res;
    }
  }
  res.value = y[0];
  return res;
}

/// Backward integration: terminal condition at t1, integrate down to t0.
template <std::size_t N>
bool integrate_backward(const DiskEngine& eng, CState<N>& y, double t1, double t0,
                        const chain::SolverOptions& opts) {
  AdaptiveRk<N> rk(make_control(opts));

  auto rhs = [&](double t, const CState<N>& s, CState<N>& ds) {
    const auto f = eng.frozen(t);
    ds[0] = -eng.field(f, s[0]);
    if constexpr (N >= 2) ds[1] = -eng.field_derivative(f, s[0]) * s[1];
  };
  auto cap = [&](double t, const CState<N>& s) -> double {
    if (!eng.has_pole()) return std::numeric_limits<double>::infinity();
    const auto f = eng.frozen(t);
    const double d = eng.dist_to_pole(f, s[0]);
    const double speed = std::abs(eng.field(f, s[0]));
    double c = opts.pole_step_factor * d;
    if (speed > 0.0) c = std::min(c, opts.pole_step_factor * d / speed);
    return c;
  };
  auto observer = [](double, const CState<N>&) { return true; };

  double t = t1;
  const auto& times = eng.path().times();
  std::size_t k = eng.path().interval_index(std::max(t1 - 1e-15, 0.0));
  while (t > t0 + 1e-15 * std::max(1.0, t1)) {
    const double t_end = std::max(times[k], t0);
    const RkStatus st = rk.advance(t, y, t_end, rhs, cap, observer);
    if (st == RkStatus::Underflow) return false;
    if (k > 0 && t <= times[k] + 1e-15) --k;
  }
  return true;
}

}  // namespace slitflow::detail
