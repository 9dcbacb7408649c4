#include "slitflow/chain.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "slitflow/detail/disk_engine.hpp"
#include "slitflow/parallel.hpp"

namespace slitflow::chain {

using detail::CState;
using detail::DiskEngine;
using detail::PointResult;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ChainSpec::ChainSpec(const fields::SlitField& b, const fields::CompleteField& sigma_,
                     driving::DrivingPath u_)
    : b_coef(b.coefficients()), slit_b(true), sigma(sigma_), u(std::move(u_)), domain(b.domain) {
  if (b.domain != sigma_.domain) {
    throw std::invalid_argument("ChainSpec: b and sigma must share a canonical domain");
  }
  if (sigma_.sigma_m1 == 0.0) {
    throw std::invalid_argument("ChainSpec: sigma requires sigma[-1] != 0");
  }
}

ChainSpec ChainSpec::with_complete_generator(const fields::CompleteField& b_like,
                                             const fields::CompleteField& sigma_,
                                             driving::DrivingPath u_) {
  ChainSpec spec(fields::SlitField(2.0, 0.0, 0.0, 0.0, b_like.domain), sigma_, std::move(u_));
  spec.b_coef = {0.0, b_like.sigma_m1, b_like.sigma_0, b_like.sigma_1};
  spec.slit_b = false;
  return spec;
}

fields::SlitField ChainSpec::slit_field() const {
  if (!slit_b) throw std::logic_error("ChainSpec: diagnostic spec has no slit field");
  return fields::SlitField(b_coef[0], b_coef[1], b_coef[2], b_coef[3], domain);
}

Complex herglotz_field(const ChainSpec& spec, double t, const Complex& z) {
  const DiskEngine eng(spec);
  const Complex w = eng.to_disk(z);
  const Complex vd = eng.field(eng.frozen(t), w);
  if (spec.domain == CanonicalDomain::Disk) return vd;
  const auto iso = conformal::canonical_iso(spec.domain, CanonicalDomain::Disk);
  return vd / iso.derivative(z);
}

Complex singularity(const ChainSpec& spec, double t) {
  const DiskEngine eng(spec);
  return eng.from_disk(eng.frozen(t).pole);
}

ChainState evolve(const ChainSpec& spec, std::span<const Complex> points, double T,
                  const SolverOptions& opts) {
  return evolve_window(spec, points, 0.0, T, opts);
}

ChainState evolve_window(const ChainSpec& spec, std::span<const Complex> points, double t0,
                         double T, const SolverOptions& opts) {
  if (!(T > t0)) throw std::invalid_argument("evolve: need T > t0");
  const DiskEngine eng(spec);

  ChainState st;
  st.time = T;
  st.initial.assign(points.begin(), points.end());
  st.values.resize(points.size());
  st.alive.assign(points.size(), 1);
  st.explosion_time.assign(points.size(), kInf);

  parallel_for(
      points.size(),
      [&](std::size_t i) {
        const Complex w0 = eng.to_disk(points[i]);
        if (!conformal::domain_contains(CanonicalDomain::Disk, w0)) {
          throw std::invalid_argument("evolve: point not interior to the domain");
        }
        CState<1> y{w0};
        const PointResult r = detail::integrate_forward<1>(eng, y, t0, T, opts);
        st.values[i] = eng.from_disk(r.value);
        st.alive[i] = r.alive ? 1 : 0;
        st.explosion_time[i] = r.death_time;
      },
      opts.threads);
  return st;
}

Complex derivative_at(const ChainSpec& spec, const Complex& z0, double t,
                      const SolverOptions& opts) {
  if (!(t >= 0.0)) throw std::invalid_argument("derivative_at: need t >= 0");
  const DiskEngine eng(spec);
  const Complex w0 = eng.to_disk(z0);
  CState<2> y{w0, Complex{1.0, 0.0}};
  if (t > 0.0) {
    const PointResult r = detail::integrate_forward<2>(eng, y, 0.0, t, opts);
    if (!r.alive) {
      throw std::domain_error("derivative_at: point exploded before the requested time");
    }
  }
  if (spec.domain == CanonicalDomain::Disk) return y[1];
  const auto& iso = eng.iso();
  // native derivative through the conjugation, by the chain rule
  return iso.inverse().derivative(y[0]) * y[1] * iso.derivative(z0);
}

Trace trace(const ChainSpec& spec, double T, double sample_dt, double epsilon,
            const SolverOptions& opts) {
  if (!(epsilon > 0.0 && epsilon < 0.1)) {
    throw std::invalid_argument("trace: epsilon must lie in (0, 0.1)");
  }
  if (!(sample_dt > 0.0 && T > 0.0)) {
    throw std::invalid_argument("trace: need positive T and sample step");
  }
  if (!spec.slit_b) throw std::invalid_argument("trace: diagnostic chains cut no slit");

  const DiskEngine eng(spec);
  const auto n = static_cast<std::size_t>(std::floor(T / sample_dt + 1e-9));

  Trace tr;
  tr.epsilon = epsilon;
  tr.times.resize(n + 1);
  tr.tips.resize(n + 1);
  tr.ok.assign(n + 1, 1);
  tr.times[0] = 0.0;
  tr.tips[0] = eng.from_disk(eng.frozen(0.0).pole);  // the marked boundary point

  parallel_for(
      n,
      [&](std::size_t j) {
        const std::size_t i = j + 1;
        const double t = std::min(static_cast<double>(i) * sample_dt, T);
        const auto f = eng.frozen(t);
        CState<1> y{(1.0 - epsilon) * f.pole};
        const bool ok = detail::integrate_backward<1>(eng, y, t, 0.0, opts);
        tr.times[i] = t;
        tr.tips[i] = eng.from_disk(y[0]);
        tr.ok[i] = ok ? 1 : 0;
      },
      opts.threads);
  return tr;
}

double schwarz_pick_ratio(const ChainSpec& spec, double t, const SolverOptions& opts) {
  if (t == 0.0) return 1.0;
  const DiskEngine eng(spec);
  CState<2> y{Complex{0.0, 0.0}, Complex{1.0, 0.0}};
  if (!detail::integrate_backward<2>(eng, y, t, 0.0, opts)) {
    throw std::domain_error("schwarz_pick_ratio: origin not alive at the requested time");
  }
  // backward run of the joint system yields g_t^{-1}(0) and (g_t^{-1})'(0)
  return std::abs(y[1]) / (1.0 - std::norm(y[0]));
}

}  // namespace slitflow::chain
