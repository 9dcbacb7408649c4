#include "slitflow/reparam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "slitflow/detail/disk_engine.hpp"
#include "slitflow/parallel.hpp"
#include "slitflow/transforms.hpp"

namespace slitflow::reparam {

using conformal::DiskAutomorphism;
using conformal::MobiusMatrix;
using detail::AdaptiveRk;
using detail::CState;
using detail::DiskEngine;
using detail::RkStatus;

namespace {

double unwrap_near(double angle, double previous) {
  const double two_pi = 2.0 * kPi;
  const double k = std::round((previous - angle) / two_pi);
  return angle + k * two_pi;
}

/// Matching Mobius map for the radial reduction, from the chain data at the
/// origin: M(z) = (|w|/w) (z - y)/(1 - conj(y) z) with y = g_t(0), w = g_t'(0).
MobiusMatrix matching_map(const Complex& y, const Complex& w) {
  return MobiusMatrix::from_automorphism(DiskAutomorphism{-std::arg(w), y});
}

}  // namespace

driving::DrivingPath RadialReduction::radial_driver() const {
  return driving::DrivingPath(lambda, u_tilde);
}

driving::DrivingPath CrossReparamState::target_driver() const {
  return driving::DrivingPath(lambda, u_tilde);
}

RadialReduction to_radial(const chain::ChainSpec& spec, double T, double sample_dt,
                          const chain::SolverOptions& opts) {
  if (!(T > 0.0) || !(sample_dt > 0.0)) {
    throw std::invalid_argument("to_radial: need positive T and sample step");
  }
  if (!transforms::is_normalized(spec.slit_field(), spec.sigma, 1e-6)) {
    throw std::invalid_argument("to_radial: chain must be normalized");
  }

  const DiskEngine eng(spec);
  RadialReduction red;
  red.T_max = T;

  // state: y = g_t(0), w = g_t'(0), lam (real, stored in a complex slot)
  CState<3> s{Complex{0.0, 0.0}, Complex{1.0, 0.0}, Complex{0.0, 0.0}};
  AdaptiveRk<3> rk(detail::make_control(opts));

  auto lambda_dot = [&](const DiskEngine::Frozen& f, const Complex& y, const Complex& w) {
    const MobiusMatrix m = matching_map(y, w).compose(f.hmat.inverse());
    const Complex one{1.0, 0.0};
    const Complex ratio = m.derivative(one) / m.apply(one);
    return (ratio * ratio).real();
  };

  auto rhs = [&](double t, const CState<3>& st, CState<3>& ds) {
    const auto f = eng.frozen(t);
    ds[0] = -eng.field(f, st[0]);
    ds[1] = -eng.field_derivative(f, st[0]) * st[1];
    ds[2] = Complex{lambda_dot(f, st[0], st[1]), 0.0};
  };
  auto cap = [&](double t, const CState<3>& st) -> double {
    const auto f = eng.frozen(t);
    const double d = eng.dist_to_pole(f, st[0]);
    const double speed = std::abs(eng.field(f, st[0]));
    double c = opts.pole_step_factor * d;
    if (speed > 0.0) c = std::min(c, opts.pole_step_factor * d / speed);
    return c;
  };

  auto record = [&](double t) {
    const auto f = eng.frozen(t);
    const Complex p = matching_map(s[0], s[1]).compose(f.hmat.inverse()).apply(Complex{1.0, 0.0});
    const double raw = std::arg(p);
    const double prev = red.u_tilde.empty() ? 0.0 : red.u_tilde.back();
    red.times.push_back(t);
    red.lambda.push_back(s[2].real());
    red.u_tilde.push_back(unwrap_near(raw, prev));
    red.center.push_back(s[0]);
    red.center_deriv.push_back(s[1]);
  };

  record(0.0);
  double t = 0.0;
  bool dead = false;
  const auto& times = eng.path().times();
  std::size_t k = 0;
  std::size_t next_sample = 1;
  while (t < T - 1e-12 && !dead) {
    while (k + 1 < times.size() && times[k + 1] <= t + 1e-15) ++k;
    double t_end = (k + 1 < times.size()) ? std::min(times[k + 1], T) : T;
    const double t_sample = static_cast<double>(next_sample) * sample_dt;
    bool sample_here = false;
    if (t_sample <= t_end + 1e-15 && t_sample > t + 1e-15) {
      t_end = std::min(t_end, t_sample);
      sample_here = std::abs(t_end - t_sample) < 1e-12;
    }

    auto observer = [&](double tc, const CState<3>& st) {
      const auto f = eng.frozen(tc);
      if (eng.dist_to_pole(f, st[0]) < opts.epsilon_blowup || std::abs(st[0]) > 1.0 + 1e-9) {
        dead = true;
        return false;
      }
      return true;
    };
    const RkStatus rs = rk.advance(t, s, t_end, rhs, cap, observer);
    if (rs == RkStatus::Underflow) dead = true;
    if (dead) {
      red.T_max = t;
      red.origin_survived = false;
      break;
    }
    if (sample_here && std::abs(t - t_sample) < 1e-12) {
      record(t);
      ++next_sample;
    }
  }
  if (!dead && std::abs(red.times.back() - T) > 1e-12) record(T);
  return red;
}

CrossReparamState cross_reparam(const chain::ChainSpec& spec, const fields::SlitField& target_b,
                                const fields::CompleteField& target_sigma, double T_hint,
                                double sample_dt, const chain::SolverOptions& opts) {
  if (!transforms::is_normalized(spec.slit_field(), spec.sigma, 1e-6) ||
      !transforms::is_normalized(target_b, target_sigma, 1e-6)) {
    throw std::invalid_argument("cross_reparam: both field pairs must be normalized");
  }

  const DiskEngine eng(spec);
  const fields::HerglotzSlitForm hb = fields::slit_to_herglotz(spec.slit_field());
  const fields::HerglotzSlitForm hb_t = fields::slit_to_herglotz(target_b);
  const fields::CompleteField sig_t{target_sigma.sigma_m1, target_sigma.sigma_0,
                                    target_sigma.sigma_1, conformal::CanonicalDomain::Disk};

  CrossReparamState out;
  out.T_reached = 0.0;

  // branch continuity for the elliptic transit time
  double last_transit = 0.0;

  struct Rates {
    Complex A_dot;
    double Theta_dot;
    double lambda_dot;
    double transit;
  };

  auto rates = [&](double t, const Complex& A, double Theta) -> Rates {
    const auto f = eng.frozen(t);
    const MobiusMatrix M = MobiusMatrix::from_automorphism(DiskAutomorphism{Theta, A});
    const MobiusMatrix m_src = M.compose(f.hmat.inverse());
    const Complex one{1.0, 0.0};
    const Complex p = m_src.apply(one);

    const auto tt = autoflow::t_sigma(sig_t, std::arg(p));
    const double transit = autoflow::nearest_branch(tt, last_transit);

    const MobiusMatrix h_fix = autoflow::flow_matrix(sig_t, -transit);
    const Complex der_fix = h_fix.derivative(p) * m_src.derivative(one);
    const double lam_dot = (der_fix * der_fix).real();

    const auto tr_src = fields::mobius_transform_slit(hb, m_src.to_automorphism());
    const auto tr_tgt =
        fields::mobius_transform_slit(hb_t, autoflow::flow_matrix(sig_t, transit).to_automorphism());

    const Complex alpha_ss = tr_src.alpha - lam_dot * tr_tgt.alpha;
    const double beta_ss = tr_src.beta - lam_dot * tr_tgt.beta;

    const Complex phase = std::exp(-kImagUnit * Theta);
    Rates r;
    r.A_dot = -phase * (1.0 - std::norm(A)) * alpha_ss;
    r.Theta_dot = -beta_ss - 2.0 * std::imag(phase * std::conj(A) * alpha_ss);
    r.lambda_dot = lam_dot;
    r.transit = transit;
    return r;
  };

  // state: A, Theta, lambda (real parts of slots 1 and 2)
  CState<3> s{Complex{0.0, 0.0}, Complex{0.0, 0.0}, Complex{0.0, 0.0}};
  AdaptiveRk<3> rk(detail::make_control(opts));

  auto rhs = [&](double t, const CState<3>& st, CState<3>& ds) {
    const Rates r = rates(t, st[0], st[1].real());
    ds[0] = r.A_dot;
    ds[1] = Complex{r.Theta_dot, 0.0};
    ds[2] = Complex{r.lambda_dot, 0.0};
  };
  auto cap = [](double, const CState<3>&) { return std::numeric_limits<double>::infinity(); };

  auto record = [&](double t) {
    const Rates r = rates(t, s[0], s[1].real());
    last_transit = r.transit;
    out.times.push_back(t);
    out.A.push_back(s[0]);
    out.Theta.push_back(s[1].real());
    out.lambda.push_back(s[2].real());
    out.u_tilde.push_back(-r.transit);
    out.T_reached = t;
  };

  record(0.0);
  double t = 0.0;
  const auto& times = eng.path().times();
  std::size_t k = 0;
  std::size_t next_sample = 1;
  while (t < T_hint - 1e-12 && !out.hit_horizon) {
    while (k + 1 < times.size() && times[k + 1] <= t + 1e-15) ++k;
    double t_end = (k + 1 < times.size()) ? std::min(times[k + 1], T_hint) : T_hint;
    const double t_sample = static_cast<double>(next_sample) * sample_dt;
    bool sample_here = false;
    if (t_sample <= t_end + 1e-15 && t_sample > t + 1e-15) {
      t_end = std::min(t_end, t_sample);
      sample_here = std::abs(t_end - t_sample) < 1e-12;
    }

    auto observer = [&](double tc, const CState<3>& st) {
      (void)tc;
      if (std::abs(st[0]) > 0.999) {
        out.hit_horizon = true;
        return false;
      }
      // keep the transit-time branch anchored between samples
      const Rates r = rates(tc, st[0], st[1].real());
      last_transit = r.transit;
      return true;
    };
    const RkStatus rs = rk.advance(t, s, t_end, rhs, cap, observer);
    if (rs == RkStatus::Underflow) {
      out.hit_horizon = true;
      break;
    }
    if (out.hit_horizon) {
      out.T_reached = t;
      break;
    }
    if (sample_here && std::abs(t - t_sample) < 1e-12) {
      record(t);
      ++next_sample;
    }
  }
  if (!out.hit_horizon && std::abs(out.times.back() - T_hint) > 1e-12) record(T_hint);
  return out;
}

double kappa_estimate(const RadialReduction& red) {
  if (red.lambda.size() < 2) throw std::invalid_argument("kappa_estimate: empty reduction");
  const double total = red.lambda.back();
  const double dt_min =
      red.times.size() > 1 ? (red.times[1] - red.times[0]) : 0.0;
  if (!(total > 10.0 * dt_min)) {
    throw std::invalid_argument("kappa_estimate: degenerate radial horizon");
  }
  double qv = 0.0;
  for (std::size_t i = 1; i < red.u_tilde.size(); ++i) {
    qv += sqr(red.u_tilde[i] - red.u_tilde[i - 1]);
  }
  return qv / total;
}

namespace {

double segment_distance(const Complex& a0, const Complex& a1, const Complex& b0,
                        const Complex& b1) {
  auto point_seg = [](const Complex& p, const Complex& s0, const Complex& s1) {
    const Complex d = s1 - s0;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - s0);
    double u = ((p - s0) * std::conj(d)).real() / len2;
    u = std::clamp(u, 0.0, 1.0);
    return std::abs(p - (s0 + u * d));
  };
  auto orient = [](const Complex& p, const Complex& q, const Complex& r) {
    return (q - p).real() * (r - p).imag() - (q - p).imag() * (r - p).real();
  };
  const double o1 = orient(a0, a1, b0), o2 = orient(a0, a1, b1);
  const double o3 = orient(b0, b1, a0), o4 = orient(b0, b1, a1);
  if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0))) return 0.0;  // crossing
  return std::min(std::min(point_seg(b0, a0, a1), point_seg(b1, a0, a1)),
                  std::min(point_seg(a0, b0, b1), point_seg(a1, b0, b1)));
}

}  // namespace

PhaseReport phase_probe(const chain::Trace& trace, std::size_t window, double resolution,
                        unsigned threads) {
  const auto& tips = trace.tips;
  const std::size_t n = tips.size();
  if (n < 500) throw std::invalid_argument("phase_probe: need at least 500 trace samples");

  PhaseReport rep;
  rep.resolution = resolution > 0.0 ? resolution : trace.epsilon;

  // minimum gap between nonadjacent samples and nonadjacent segments
  std::vector<double> row_gap(n, std::numeric_limits<double>::infinity());
  std::vector<double> row_seg(n, std::numeric_limits<double>::infinity());
  parallel_for(
      n,
      [&](std::size_t i) {
        double g = std::numeric_limits<double>::infinity();
        double sgap = std::numeric_limits<double>::infinity();
        for (std::size_t j = i + window + 1; j < n; ++j) {
          g = std::min(g, std::abs(tips[i] - tips[j]));
          if (i + 1 < n && j + 1 < n) {
            sgap = std::min(sgap, segment_distance(tips[i], tips[i + 1], tips[j], tips[j + 1]));
          }
        }
        row_gap[i] = g;
        row_seg[i] = sgap;
      },
      threads);
  rep.min_nonadjacent_gap = *std::min_element(row_gap.begin(), row_gap.end());
  const double min_seg = *std::min_element(row_seg.begin(), row_seg.end());
  rep.simple = min_seg >= rep.resolution;

  // coarse box counting over three dyadic scales
  double re_min = tips[0].real(), re_max = re_min, im_min = tips[0].imag(), im_max = im_min;
  for (const Complex& z : tips) {
    re_min = std::min(re_min, z.real());
    re_max = std::max(re_max, z.real());
    im_min = std::min(im_min, z.imag());
    im_max = std::max(im_max, z.imag());
  }
  const double span = std::max(re_max - re_min, im_max - im_min);
  if (span <= 0.0) {
    rep.box_dim_estimate = 0.0;
    return rep;
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const int scales = 3;
  for (int k = 0; k < scales; ++k) {
    const double delta = span / (16.0 * std::pow(2.0, k));
    std::set<std::pair<long, long>> boxes;
    for (const Complex& z : tips) {
      boxes.insert({static_cast<long>(std::floor((z.real() - re_min) / delta)),
                    static_cast<long>(std::floor((z.imag() - im_min) / delta))});
    }
    const double x = std::log(1.0 / delta);
    const double y = std::log(static_cast<double>(boxes.size()));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = scales;
  rep.box_dim_estimate = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return rep;
}

}  // namespace slitflow::reparam
