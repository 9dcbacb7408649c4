#include "slitflow/autoflow.hpp"

#include <cmath>
#include <stdexcept>

namespace slitflow::autoflow {

namespace {

constexpr double kParabolicTol = 1e-10;

struct DiskForm {
  Complex alpha;
  double beta;
};

DiskForm disk_form(const CompleteField& sigma) {
  const auto f = fields::to_disk_form(sigma);
  return {f.alpha(), f.beta()};
}

// cosh(t mu) and sinh(t mu)/mu for mu^2 = D/4, with the parabolic limit
// handled by series to avoid cancellation near D = 0.
void flow_scalars(double D, double t, double& c, double& s) {
  const double x = D / 4.0 * t * t;  // (t mu)^2
  if (std::abs(x) < 1e-8) {
    // cosh sqrt(x) = 1 + x/2 + x^2/24, sinh(sqrt x)/sqrt x = 1 + x/6 + x^2/120
    c = 1.0 + x / 2.0 + x * x / 24.0;
    s = t * (1.0 + x / 6.0 + x * x / 120.0);
    return;
  }
  if (D > 0.0) {
    const double mu = std::sqrt(D) / 2.0;
    c = std::cosh(t * mu);
    s = std::sinh(t * mu) / mu;
  } else {
    const double nu = std::sqrt(-D) / 2.0;
    c = std::cos(t * nu);
    s = std::sin(t * nu) / nu;
  }
}

}  // namespace

FlowClassification classify(const CompleteField& sigma) {
  const double D = sigma.sigma_0 * sigma.sigma_0 - 4.0 * sigma.sigma_m1 * sigma.sigma_1;
  FlowClassification out;
  out.discriminant = D;
  if (D < -kParabolicTol) {
    out.cls = FlowClass::Elliptic;
  } else if (D > kParabolicTol) {
    out.cls = FlowClass::Hyperbolic;
  } else {
    out.cls = FlowClass::Parabolic;
  }
  return out;
}

MobiusMatrix flow_matrix(const CompleteField& sigma, double t) {
  const DiskForm f = disk_form(sigma);
  const double D = 4.0 * std::norm(f.alpha) - f.beta * f.beta;
  double c = 1.0, s = 0.0;
  flow_scalars(D, t, c, s);
  MobiusMatrix m;
  m.p = Complex{c, -s * f.beta / 2.0};
  m.q = s * f.alpha;
  return m;
}

DiskAutomorphism flow_at(const CompleteField& sigma, double t) {
  return flow_matrix(sigma, t).to_automorphism();
}

DiskAutomorphism inverse_flow_at(const CompleteField& sigma, double t) {
  return flow_at(sigma, -t);
}

Complex flow_apply(const CompleteField& sigma, double t, const Complex& z) {
  const MobiusMatrix m = flow_matrix(sigma, t);
  if (sigma.domain == CanonicalDomain::Disk) return m.apply(z);
  const auto iso = conformal::canonical_iso(sigma.domain, CanonicalDomain::Disk);
  return iso.apply_inverse(m.apply(iso.apply(z)));
}

TransitTime t_sigma(const CompleteField& sigma, double theta) {
  const DiskForm f = disk_form(sigma);
  const Complex w = std::polar(1.0, theta);

  if (std::abs(w - 1.0) < 1e-12) return {0.0, {}};

  // sigma evaluated at e^{i theta} in disk coordinates
  const Complex sig_w = Complex{0.0, 0.0} + f.alpha - kImagUnit * f.beta * w -
                        std::conj(f.alpha) * w * w;
  if (std::abs(sig_w) <= 1e-12) {
    throw std::domain_error("t_sigma: e^{i theta} is a fixed point of the flow");
  }

  // Solve c (1 - w) + s (alpha - i beta/2 - w (conj(alpha) + i beta/2)) = 0
  // for the flow scalars (c, s); the ratio s/c is real whenever the point is
  // reachable from 1.
  const Complex N = -(1.0 - w);
  const Complex K = f.alpha - kImagUnit * (f.beta / 2.0) -
                    w * (std::conj(f.alpha) + kImagUnit * (f.beta / 2.0));
  const double D = 4.0 * std::norm(f.alpha) - f.beta * f.beta;
  const double normK = std::norm(K);
  const double y = (N * std::conj(K)).real();

  TransitTime out;
  if (std::abs(D) <= kParabolicTol) {
    if (normK < 1e-28) throw std::domain_error("t_sigma: degenerate parabolic configuration");
    out.principal = y / normK;
  } else if (D < 0.0) {
    const double nu = std::sqrt(-D) / 2.0;
    out.principal = std::atan2(nu * y, normK) / nu;
    out.period = kPi / nu;  // = 2 pi / sqrt(-D)
  } else {
    const double mu = std::sqrt(D) / 2.0;
    if (normK < 1e-28) throw std::domain_error("t_sigma: degenerate hyperbolic configuration");
    const double x = mu * y / normK;
    if (!(std::abs(x) < 1.0)) {
      throw std::domain_error("t_sigma: angle not reachable by the orbit of 1 (hyperbolic flow)");
    }
    out.principal = std::atanh(x) / mu;
  }

  // Contract check; the closed form is exact up to rounding, so failure here
  // means the configuration was out of range after all.
  const Complex reached = flow_matrix(sigma, out.principal).apply(Complex{1.0, 0.0});
  if (std::abs(reached - w) > 1e-9) {
    throw std::domain_error("t_sigma: contract |h_T(1) - e^{i theta}| < 1e-9 not attainable");
  }
  return out;
}

std::optional<double> t_sigma_printed(const CompleteField& sigma, double theta) {
  const DiskForm f = disk_form(sigma);
  const Complex alpha = f.alpha;
  const double beta = f.beta;
  const double D = 4.0 * std::norm(alpha) - beta * beta;
  const Complex w = std::polar(1.0, theta);

  if (std::abs(D) <= kParabolicTol) {
    const double tg = std::tan(theta / 2.0);
    double den;
    if (std::abs(beta - 2.0 * std::abs(alpha)) <= 1e-9) {
      den = std::abs(alpha) - alpha.imag() + alpha.real() * tg;
    } else {
      den = std::abs(alpha) + alpha.imag() - alpha.real() * tg;
    }
    if (den == 0.0) return std::nullopt;
    return tg / den;
  }
  const Complex A2 = 2.0 * alpha - kImagUnit * beta;
  const double num = ((1.0 - std::conj(w)) * A2).real();
  const double den = std::norm(A2) - (std::conj(w) * A2 * A2).real();
  if (den == 0.0) return std::nullopt;
  if (D > 0.0) {
    const double x = std::sqrt(D) * num / den;
    if (!(std::abs(x) < 1.0)) return std::nullopt;
    return -2.0 / std::sqrt(D) * std::atanh(x);
  }
  return -2.0 / std::sqrt(-D) * std::atan(std::sqrt(-D) * num / den);
}

double nearest_branch(const TransitTime& t, double near) {
  if (!t.period) return t.principal;
  const double p = *t.period;
  const double k = std::round((near - t.principal) / p);
  return t.principal + k * p;
}

}  // namespace slitflow::autoflow
