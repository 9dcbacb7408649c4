#include "slitflow/fields.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace slitflow::fields {

namespace {

constexpr double kPoleGuard = 1e-13;

[[noreturn]] void pole_error(const char* what) { throw std::domain_error(what); }

void check_index(int n) {
  if (n < -2 || n > 2) throw std::invalid_argument("ell: index must lie in [-2, 2]");
}

}  // namespace

Complex ell(int n, CanonicalDomain domain, const Complex& z) {
  check_index(n);
  switch (domain) {
    case CanonicalDomain::HalfPlane: {
      if (n == -2 && std::abs(z) < kPoleGuard) pole_error("ell: pole at 0 in the half-plane");
      switch (n) {
        case -2: return -1.0 / z;
        case -1: return -1.0;
        case 0: return -z;
        case 1: return -z * z;
        case 2: return -z * z * z;
      }
      break;
    }
    case CanonicalDomain::Disk: {
      const Complex zm = z - 1.0, zp = z + 1.0;
      if (n <= -2 && std::abs(zm) < kPoleGuard) pole_error("ell: pole at 1 in the disk");
      if (n >= 2 && std::abs(zp) < kPoleGuard) pole_error("ell: pole at -1 in the disk");
      switch (n) {
        case -2: return 0.125 * zp * zp * zp / zm;
        case -1: return -0.25 * kImagUnit * zp * zp;
        case 0: return 0.5 * (1.0 - z * z);
        case 1: return kImagUnit * zm * zm;
        case 2: return 2.0 * zm * zm * zm / zp;
      }
      break;
    }
    case CanonicalDomain::Strip: {
      if (n <= -1 && std::abs(z) < kPoleGuard) {
        if (n == -2) pole_error("ell: pole at 0 in the strip");
        // n = -1 is finite at 0 (limit -1), handled by the closed form below.
      }
      const Complex t = std::tanh(z / 2.0);
      if (n <= -2 && std::abs(t) < kPoleGuard) pole_error("ell: pole at 0 in the strip");
      return -std::pow(2.0, n) * std::sinh(z) * std::pow(t, static_cast<double>(n));
    }
  }
  return {};
}

Complex ell_derivative(int n, CanonicalDomain domain, const Complex& z) {
  check_index(n);
  switch (domain) {
    case CanonicalDomain::HalfPlane: {
      if (n == -2 && std::abs(z) < kPoleGuard) pole_error("ell: pole at 0 in the half-plane");
      switch (n) {
        case -2: return 1.0 / (z * z);
        case -1: return 0.0;
        case 0: return -1.0;
        case 1: return -2.0 * z;
        case 2: return -3.0 * z * z;
      }
      break;
    }
    case CanonicalDomain::Disk: {
      const Complex zm = z - 1.0, zp = z + 1.0;
      if (n <= -2 && std::abs(zm) < kPoleGuard) pole_error("ell: pole at 1 in the disk");
      if (n >= 2 && std::abs(zp) < kPoleGuard) pole_error("ell: pole at -1 in the disk");
      switch (n) {
        case -2: return 0.25 * zp * zp * (z - 2.0) / (zm * zm);
        case -1: return -0.5 * kImagUnit * zp;
        case 0: return -z;
        case 1: return 2.0 * kImagUnit * zm;
        case 2: return 4.0 * zm * zm * (z + 2.0) / (zp * zp);
      }
      break;
    }
    case CanonicalDomain::Strip: {
      const Complex t = std::tanh(z / 2.0);
      if (n <= -2 && std::abs(t) < kPoleGuard) pole_error("ell: pole at 0 in the strip");
      const double p2n = std::pow(2.0, n);
      const Complex tn = std::pow(t, static_cast<double>(n));
      const Complex tprime = 0.5 * (1.0 - t * t);
      Complex d = std::cosh(z) * tn;
      if (n != 0) {
        d += std::sinh(z) * static_cast<double>(n) * std::pow(t, static_cast<double>(n - 1)) *
             tprime;
      }
      return -p2n * d;
    }
  }
  return {};
}

Complex eval_basis(const std::array<double, 4>& c, CanonicalDomain domain, const Complex& z) {
  Complex v = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (c[static_cast<std::size_t>(i)] != 0.0) {
      v += c[static_cast<std::size_t>(i)] * ell(i - 2, domain, z);
    }
  }
  return v;
}

Complex eval_basis_derivative(const std::array<double, 4>& c, CanonicalDomain domain,
                              const Complex& z) {
  Complex v = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (c[static_cast<std::size_t>(i)] != 0.0) {
      v += c[static_cast<std::size_t>(i)] * ell_derivative(i - 2, domain, z);
    }
  }
  return v;
}

// ---------------------------------------------------------------------------

Complex CompleteField::eval(const Complex& z) const {
  return eval_basis({0.0, sigma_m1, sigma_0, sigma_1}, domain, z);
}

Complex CompleteField::derivative(const Complex& z) const {
  return eval_basis_derivative({0.0, sigma_m1, sigma_0, sigma_1}, domain, z);
}

Complex CompleteDiskForm::eval(const Complex& z) const {
  return Complex{a, b} - kImagUnit * c * z + Complex{-a, b} * z * z;
}

SlitField::SlitField(double bm2, double bm1, double b0, double b1, CanonicalDomain dom)
    : b_m2(bm2), b_m1(bm1), b_0(b0), b_1(b1), domain(dom) {
  if (!(bm2 > 0.0)) {
    throw std::invalid_argument("slit field requires b[-2] > 0");
  }
}

Complex SlitField::eval(const Complex& z) const {
  return eval_basis(coefficients(), domain, z);
}

Complex SlitField::derivative(const Complex& z) const {
  return eval_basis_derivative(coefficients(), domain, z);
}

Complex HerglotzSlitForm::eval(const Complex& z) const {
  Complex v = alpha - kImagUnit * beta * z - std::conj(alpha) * z * z;
  if (gamma != 0.0) {
    const Complex den = pole - z;
    if (std::abs(den) < kPoleGuard) pole_error("HerglotzSlitForm: evaluation at the pole");
    v -= z * gamma * (pole + z) / den;
  }
  return v;
}

Complex HerglotzSlitForm::derivative(const Complex& z) const {
  Complex v = -kImagUnit * beta - 2.0 * std::conj(alpha) * z;
  if (gamma != 0.0) {
    const Complex den = pole - z;
    if (std::abs(den) < kPoleGuard) pole_error("HerglotzSlitForm: evaluation at the pole");
    // d/dz [ z (z0+z)/(z0-z) ] = (z0^2 + 2 z0 z - z^2)/(z0-z)^2
    v -= gamma * (pole * pole + 2.0 * pole * z - z * z) / (den * den);
  }
  return v;
}

// ---------------------------------------------------------------------------

CompleteDiskForm to_disk_form(const CompleteField& f) {
  return {f.sigma_0 / 2.0, f.sigma_1 - f.sigma_m1 / 4.0, 2.0 * f.sigma_1 + f.sigma_m1 / 2.0};
}

CompleteField from_disk_form(const CompleteDiskForm& f, CanonicalDomain domain) {
  return {-2.0 * f.b + f.c, 2.0 * f.a, 0.25 * (2.0 * f.b + f.c), domain};
}

HerglotzSlitForm slit_to_herglotz(const SlitField& f) {
  HerglotzSlitForm h;
  h.gamma = f.b_m2 / 2.0;
  h.beta = (f.b_m1 + 4.0 * f.b_1) / 2.0;
  const double re_alpha = (f.b_0 - h.gamma / 2.0) / 2.0;
  const double im_alpha = (4.0 * f.b_1 - f.b_m1) / 4.0;
  h.alpha = {re_alpha, im_alpha};
  h.pole = {1.0, 0.0};
  return h;
}

SlitField herglotz_to_slit(const HerglotzSlitForm& h, CanonicalDomain domain) {
  if (std::abs(h.pole - Complex{1.0, 0.0}) > 1e-12) {
    throw std::invalid_argument(
        "herglotz_to_slit: pole must be 1 (move it with mobius_transform_slit first)");
  }
  if (!(h.gamma > 0.0)) {
    throw std::invalid_argument("herglotz_to_slit: gamma must be positive for a slit field");
  }
  return SlitField(2.0 * h.gamma, h.beta - 2.0 * h.alpha.imag(),
                   h.gamma / 2.0 + 2.0 * h.alpha.real(), 0.25 * (h.beta + 2.0 * h.alpha.imag()),
                   domain);
}

// ---------------------------------------------------------------------------

FieldFn pushforward(FieldFn field, const ConformalMap& map) {
  return [field = std::move(field), map](const Complex& z) -> Complex {
    const Complex w = map.apply_inverse(z);
    return map.derivative(w) * field(w);
  };
}

HerglotzSlitForm mobius_transform_slit(const HerglotzSlitForm& h, const DiskAutomorphism& m) {
  HerglotzSlitForm out;
  out.pole = mobius_apply(m, h.pole);
  out.gamma = h.gamma * std::norm(mobius_derivative(m, h.pole));
  out.alpha = std::exp(kImagUnit * m.theta) / (1.0 - std::norm(m.a)) * h.eval(m.a);
  // beta from the derivative of the pushforward at 0:
  // (m_* V)'(0) = -i beta~ - gamma~, with
  // (m_* V)'(0) = m''(w0)/m'(w0) V(w0) + V'(w0), w0 = m^{-1}(0) = a.
  const Complex w0 = m.a;
  const Complex g1 = mobius_derivative(m, w0);
  const Complex g2 = mobius_second_derivative(m, w0);
  const Complex dp0 = g2 / g1 * h.eval(w0) + h.derivative(w0);
  out.beta = -(dp0.imag());
  return out;
}

SemicompleteReport semicomplete_check(const FieldFn& field, int radial_samples,
                                      int angular_samples) {
  const Complex v0 = field(Complex{0.0, 0.0});
  // q(0) = -V'(0): second-order central difference.
  const double h = 1e-5;
  const Complex vp0 = (field(Complex{h, 0.0}) - field(Complex{-h, 0.0})) / (2.0 * h);
  double min_re = (-vp0).real();

  for (int j = 0; j < radial_samples; ++j) {
    const double r = 0.999 * static_cast<double>(j + 1) / static_cast<double>(radial_samples);
    for (int k = 0; k < angular_samples; ++k) {
      const double ang = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(angular_samples);
      const Complex z = std::polar(r, ang);
      const Complex q = (v0 - field(z)) / z - std::conj(v0) * z;
      min_re = std::min(min_re, q.real());
    }
  }
  return {min_re >= -1e-9, min_re};
}

}  // namespace slitflow::fields
