#pragma once

#include <array>
#include <cmath>
#include <limits>

#include "slitflow/complex_types.hpp"

namespace slitflow::detail {

template <std::size_t N>
using CState = std::array<Complex, N>;

struct StepControl {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double h_min = 1e-14;
  double h_max = std::numeric_limits<double>::infinity();
  double h_init = 1e-4;
};

enum class RkStatus { Done, Underflow, Stopped };

/// Adaptive Dormand-Prince 5(4) on complex states.  Supports backward
/// integration (t_end < t).  The step-cap callback bounds |h| (return
/// +infinity for no cap); the observer runs after each accepted step and may
/// stop the integration.
template <std::size_t N>
class AdaptiveRk {
 public:
  explicit AdaptiveRk(const StepControl& ctl) : ctl_(ctl) {}

  /// Current (signed) step size; kept across advance() calls so adaptivity
  /// survives interval clipping.
  double h = 0.0;

  template <typename RHS, typename Cap, typename Observer>
  RkStatus advance(double& t, CState<N>& y, double t_end, RHS&& rhs, Cap&& cap, Observer&& obs) {
    const double dir = (t_end >= t) ? 1.0 : -1.0;
    if (h == 0.0 || h * dir <= 0.0) h = dir * ctl_.h_init;

    while (dir * (t_end - t) > 1e-15 * std::max(1.0, std::abs(t))) {
      double habs = std::min(std::abs(h), ctl_.h_max);
      habs = std::min(habs, dir * (t_end - t));
      const double capv = cap(t, y);
      if (capv < habs) habs = std::max(capv, ctl_.h_min);
      double hstep = dir * habs;

      CState<N> ynew, err;
      if (!step(t, y, hstep, rhs, ynew, err)) {
        // non-finite right-hand side: shrink hard
        h = dir * std::max(habs * 0.1, ctl_.h_min);
        if (std::abs(h) <= ctl_.h_min) return RkStatus::Underflow;
        continue;
      }

      double scaled = error_norm(y, ynew, err);
      if (scaled <= 1.0) {
        t += hstep;
        y = ynew;
        const double grow = scaled > 1e-30 ? 0.9 * std::pow(scaled, -0.2) : 5.0;
        h = dir * std::min(habs * std::min(grow, 5.0), ctl_.h_max);
        if (!obs(t, y)) return RkStatus::Stopped;
      } else {
        const double shrink = std::max(0.9 * std::pow(scaled, -0.2), 0.2);
        const double hnew = habs * shrink;
        if (hnew <= ctl_.h_min) return RkStatus::Underflow;
        h = dir * hnew;
      }
    }
    return RkStatus::Done;
  }

 private:
  StepControl ctl_;

  template <typename RHS>
  bool step(double t, const CState<N>& y, double hstep, RHS&& rhs, CState<N>& out,
            CState<N>& err) {
    // Dormand-Prince coefficients
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    CState<N> k1, k2, k3, k4, k5, k6, k7, tmp;
    if (!eval(rhs, t, y, k1)) return false;
    axpy(tmp, y, hstep, {{a21, 0, 0, 0, 0, 0}}, k1, k1, k1, k1, k1, k1);
    if (!eval(rhs, t + c2 * hstep, tmp, k2)) return false;
    axpy(tmp, y, hstep, {{a31, a32, 0, 0, 0, 0}}, k1, k2, k2, k2, k2, k2);
    if (!eval(rhs, t + c3 * hstep, tmp, k3)) return false;
    axpy(tmp, y, hstep, {{a41, a42, a43, 0, 0, 0}}, k1, k2, k3, k3, k3, k3);
    if (!eval(rhs, t + c4 * hstep, tmp, k4)) return false;
    axpy(tmp, y, hstep, {{a51, a52, a53, a54, 0, 0}}, k1, k2, k3, k4, k4, k4);
    if (!eval(rhs, t + c5 * hstep, tmp, k5)) return false;
    axpy(tmp, y, hstep, {{a61, a62, a63, a64, a65, 0}}, k1, k2, k3, k4, k5, k5);
    if (!eval(rhs, t + hstep, tmp, k6)) return false;
    for (std::size_t i = 0; i < N; ++i) {
      out[i] = y[i] + hstep * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    }
    if (!eval(rhs, t + hstep, out, k7)) return false;
    for (std::size_t i = 0; i < N; ++i) {
      err[i] = hstep * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                        e7 * k7[i]);
    }
    return true;
  }

  template <typename RHS>
  static bool eval(RHS&& rhs, double t, const CState<N>& y, CState<N>& dy) {
    rhs(t, y, dy);
    for (const Complex& v : dy) {
      if (!is_finite(v)) return false;
    }
    return true;
  }

  static void axpy(CState<N>& out, const CState<N>& y, double hstep,
                   const std::array<double, 6>& w, const CState<N>& k1, const CState<N>& k2,
                   const CState<N>& k3, const CState<N>& k4, const CState<N>& k5,
                   const CState<N>& k6) {
    for (std::size_t i = 0; i < N; ++i) {
      Complex acc = w[0] * k1[i];
      if (w[1] != 0.0) acc += w[1] * k2[i];
      if (w[2] != 0.0) acc += w[2] * k3[i];
      if (w[3] != 0.0) acc += w[3] * k4[i];
      if (w[4] != 0.0) acc += w[4] * k5[i];
      if (w[5] != 0.0) acc += w[5] * k6[i];
      out[i] = y[i] + hstep * acc;
    }
  }

  double error_norm(const CState<N>& y0, const CState<N>& y1, const CState<N>& err) const {
    double m = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      if (!is_finite(y1[i]) || !is_finite(err[i])) return std::numeric_limits<double>::infinity();
      const double scale =
          ctl_.abs_tol + ctl_.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
      m = std::max(m, std::abs(err[i]) / scale);
    }
    return m;
  }
};

}  // namespace slitflow::detail
