#include "slitflow/conformal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace slitflow::conformal {

const char* domain_name(CanonicalDomain d) {
  switch (d) {
    case CanonicalDomain::HalfPlane: return "halfplane";
    case CanonicalDomain::Disk: return "disk";
    case CanonicalDomain::Strip: return "strip";
  }
  return "?";
}

CanonicalDomain domain_from_name(const std::string& name) {
  if (name == "halfplane" || name == "half_plane" || name == "H") return CanonicalDomain::HalfPlane;
  if (name == "disk" || name == "D") return CanonicalDomain::Disk;
  if (name == "strip" || name == "S") return CanonicalDomain::Strip;
  throw std::invalid_argument("unknown canonical domain: " + name);
}

bool domain_contains(CanonicalDomain d, const Complex& z, double tol) {
  if (is_infinity(z)) return false;
  switch (d) {
    case CanonicalDomain::HalfPlane: return z.imag() > tol;
    case CanonicalDomain::Disk: return std::abs(z) < 1.0 - tol;
    case CanonicalDomain::Strip: return z.imag() > tol && z.imag() < kPi - tol;
  }
  return false;
}

Complex marked_boundary_point(CanonicalDomain d) {
  switch (d) {
    case CanonicalDomain::HalfPlane: return {0.0, 0.0};
    case CanonicalDomain::Disk: return {1.0, 0.0};
    case CanonicalDomain::Strip: return {0.0, 0.0};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Disk automorphisms
// ---------------------------------------------------------------------------

Complex mobius_apply(const DiskAutomorphism& m, const Complex& z) {
  if (std::abs(z) > 1.0 + 1e-9) {
    throw std::domain_error("mobius_apply: point outside the closed unit disk");
  }
  return std::exp(kImagUnit * m.theta) * (z - m.a) / (1.0 - std::conj(m.a) * z);
}

MobiusMatrix MobiusMatrix::from_automorphism(const DiskAutomorphism& m) {
  // e^{i theta}(z-a)/(1-conj(a)z) = (pz+q)/(conj(q)z+conj(p)) with
  // p = e^{i theta/2}, q = -a e^{i theta/2}.
  const Complex half = std::exp(kImagUnit * (m.theta / 2.0));
  return MobiusMatrix{half, -m.a * half};
}

DiskAutomorphism MobiusMatrix::to_automorphism() const {
  const double d = det();
  if (!(d > 0.0)) throw std::domain_error("MobiusMatrix: not a disk automorphism (det <= 0)");
  DiskAutomorphism m;
  m.theta = 2.0 * std::arg(p);
  m.a = -q / p;
  return m;
}

Complex MobiusMatrix::apply(const Complex& z) const {
  return (p * z + q) / (std::conj(q) * z + std::conj(p));
}

Complex MobiusMatrix::derivative(const Complex& z) const {
  const Complex den = std::conj(q) * z + std::conj(p);
  return det() / (den * den);
}

MobiusMatrix MobiusMatrix::compose(const MobiusMatrix& o) const {
  // [[p,q],[q~,p~]] * [[o.p,o.q],[o.q~,o.p~]]
  return MobiusMatrix{p * o.p + q * std::conj(o.q), p * o.q + q * std::conj(o.p)};
}

MobiusMatrix MobiusMatrix::inverse() const {
  // adjugate; overall positive scale is irrelevant for the Mobius action
  return MobiusMatrix{std::conj(p), -q};
}

double MobiusMatrix::det() const { return std::norm(p) - std::norm(q); }

DiskAutomorphism mobius_compose(const DiskAutomorphism& m1, const DiskAutomorphism& m2) {
  return MobiusMatrix::from_automorphism(m1)
      .compose(MobiusMatrix::from_automorphism(m2))
      .to_automorphism();
}

DiskAutomorphism mobius_invert(const DiskAutomorphism& m) {
  return MobiusMatrix::from_automorphism(m).inverse().to_automorphism();
}

Complex mobius_derivative(const DiskAutomorphism& m, const Complex& z) {
  const Complex den = 1.0 - std::conj(m.a) * z;
  return std::exp(kImagUnit * m.theta) * (1.0 - std::norm(m.a)) / (den * den);
}

Complex mobius_second_derivative(const DiskAutomorphism& m, const Complex& z) {
  const Complex den = 1.0 - std::conj(m.a) * z;
  return std::exp(kImagUnit * m.theta) * (1.0 - std::norm(m.a)) * 2.0 * std::conj(m.a) /
         (den * den * den);
}

// ---------------------------------------------------------------------------
// ConformalMap
// ---------------------------------------------------------------------------

namespace {

// phi: H -> D, z -> -(z - 2i)/(z + 2i); maps 2i -> 0, 0 -> 1, infinity -> -1.
Complex phi(const Complex& z) {
  if (is_infinity(z)) return {-1.0, 0.0};
  return -(z - 2.0 * kImagUnit) / (z + 2.0 * kImagUnit);
}
Complex phi_deriv(const Complex& z) {
  const Complex den = z + 2.0 * kImagUnit;
  return -4.0 * kImagUnit / (den * den);
}
Complex phi_second(const Complex& z) {
  const Complex den = z + 2.0 * kImagUnit;
  return 8.0 * kImagUnit / (den * den * den);
}

// phi^{-1}: D -> H, w -> 2i(1 - w)/(1 + w); maps -1 -> infinity.
Complex phi_inv(const Complex& w) {
  if (std::abs(w + 1.0) < 1e-14) return infinity_point();
  return 2.0 * kImagUnit * (1.0 - w) / (1.0 + w);
}
Complex phi_inv_deriv(const Complex& w) {
  const Complex den = 1.0 + w;
  return -4.0 * kImagUnit / (den * den);
}
Complex phi_inv_second(const Complex& w) {
  const Complex den = 1.0 + w;
  return 8.0 * kImagUnit / (den * den * den);
}

// psi: H -> S, z -> Log((2 + z)/(2 - z)); maps infinity -> i pi.
Complex psi(const Complex& z) {
  if (is_infinity(z)) return {0.0, kPi};
  return std::log((2.0 + z) / (2.0 - z));
}
Complex psi_deriv(const Complex& z) { return 4.0 / (4.0 - z * z); }
Complex psi_second(const Complex& z) {
  const Complex den = 4.0 - z * z;
  return 8.0 * z / (den * den);
}

// psi^{-1}: S -> H, w -> 2 tanh(w/2); maps i pi -> infinity.
Complex psi_inv(const Complex& w) {
  if (std::abs(w - Complex{0.0, kPi}) < 1e-14) return infinity_point();
  return 2.0 * std::tanh(w / 2.0);
}
Complex psi_inv_deriv(const Complex& w) {
  const Complex c = std::cosh(w / 2.0);
  return 1.0 / (c * c);
}
Complex psi_inv_second(const Complex& w) {
  const Complex c = std::cosh(w / 2.0);
  return -std::tanh(w / 2.0) / (c * c);
}

}  // namespace

ConformalMap ConformalMap::identity() { return ConformalMap{}; }

ConformalMap ConformalMap::half_plane_to_disk() {
  ConformalMap f;
  f.steps_.push_back({Prim::HToD, {}});
  return f;
}

ConformalMap ConformalMap::half_plane_to_strip() {
  ConformalMap f;
  f.steps_.push_back({Prim::HToS, {}});
  return f;
}

ConformalMap ConformalMap::disk_automorphism(const DiskAutomorphism& m) {
  ConformalMap f;
  f.steps_.push_back({Prim::Mobius, m});
  return f;
}

Complex ConformalMap::prim_apply(const Step& s, const Complex& z) {
  switch (s.prim) {
    case Prim::HToD: return phi(z);
    case Prim::DToH: return phi_inv(z);
    case Prim::HToS: return psi(z);
    case Prim::SToH: return psi_inv(z);
    case Prim::Mobius: return mobius_apply(s.m, z);
  }
  return z;
}

Complex ConformalMap::prim_derivative(const Step& s, const Complex& z) {
  switch (s.prim) {
    case Prim::HToD: return phi_deriv(z);
    case Prim::DToH: return phi_inv_deriv(z);
    case Prim::HToS: return psi_deriv(z);
    case Prim::SToH: return psi_inv_deriv(z);
    case Prim::Mobius: return mobius_derivative(s.m, z);
  }
  return {1.0, 0.0};
}

Complex ConformalMap::prim_second_derivative(const Step& s, const Complex& z) {
  switch (s.prim) {
    case Prim::HToD: return phi_second(z);
    case Prim::DToH: return phi_inv_second(z);
    case Prim::HToS: return psi_second(z);
    case Prim::SToH: return psi_inv_second(z);
    case Prim::Mobius: return mobius_second_derivative(s.m, z);
  }
  return {0.0, 0.0};
}

ConformalMap::Step ConformalMap::prim_inverse(const Step& s) {
  switch (s.prim) {
    case Prim::HToD: return {Prim::DToH, {}};
    case Prim::DToH: return {Prim::HToD, {}};
    case Prim::HToS: return {Prim::SToH, {}};
    case Prim::SToH: return {Prim::HToS, {}};
    case Prim::Mobius: return {Prim::Mobius, mobius_invert(s.m)};
  }
  return s;
}

Complex ConformalMap::apply(const Complex& z) const {
  Complex w = z;
  for (const Step& s : steps_) w = prim_apply(s, w);
  return w;
}

Complex ConformalMap::apply_inverse(const Complex& z) const {
  Complex w = z;
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    w = prim_apply(prim_inverse(*it), w);
  }
  return w;
}

Complex ConformalMap::derivative(const Complex& z) const {
  Complex w = z;
  Complex d{1.0, 0.0};
  for (const Step& s : steps_) {
    d *= prim_derivative(s, w);
    w = prim_apply(s, w);
  }
  return d;
}

Complex ConformalMap::second_derivative(const Complex& z) const {
  // (g o h)'' = g''(h) h'^2 + g'(h) h''; fold over the chain.
  Complex w = z;
  Complex d1{1.0, 0.0};
  Complex d2{0.0, 0.0};
  for (const Step& s : steps_) {
    const Complex g1 = prim_derivative(s, w);
    const Complex g2 = prim_second_derivative(s, w);
    d2 = g2 * d1 * d1 + g1 * d2;
    d1 = g1 * d1;
    w = prim_apply(s, w);
  }
  return d2;
}

ConformalMap ConformalMap::inverse() const {
  ConformalMap f;
  f.steps_.reserve(steps_.size());
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    f.steps_.push_back(prim_inverse(*it));
  }
  return f;
}

ConformalMap ConformalMap::after(const ConformalMap& inner) const {
  ConformalMap f = inner;
  f.steps_.insert(f.steps_.end(), steps_.begin(), steps_.end());
  return f;
}

ConformalMap canonical_iso(CanonicalDomain from, CanonicalDomain to) {
  using D = CanonicalDomain;
  if (from == to) return ConformalMap::identity();
  if (from == D::HalfPlane && to == D::Disk) return ConformalMap::half_plane_to_disk();
  if (from == D::HalfPlane && to == D::Strip) return ConformalMap::half_plane_to_strip();
  if (from == D::Disk && to == D::HalfPlane) return ConformalMap::half_plane_to_disk().inverse();
  if (from == D::Strip && to == D::HalfPlane) return ConformalMap::half_plane_to_strip().inverse();
  if (from == D::Disk && to == D::Strip) {
    return ConformalMap::half_plane_to_strip().after(ConformalMap::half_plane_to_disk().inverse());
  }
  // Strip -> Disk
  return ConformalMap::half_plane_to_disk().after(ConformalMap::half_plane_to_strip().inverse());
}

}  // namespace slitflow::conformal
