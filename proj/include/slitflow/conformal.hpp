#pragma once

#include <vector>

#include "slitflow/complex_types.hpp"

namespace slitflow::conformal {

/// The three canonical domains:
///   HalfPlane = {Im z > 0},  Disk = {|z| < 1},  Strip = {0 < Im z < pi}.
enum class CanonicalDomain { HalfPlane, Disk, Strip };

const char* domain_name(CanonicalDomain d);
CanonicalDomain domain_from_name(const std::string& name);

/// Interior membership with a tolerance margin (tol > 0 shrinks the domain).
bool domain_contains(CanonicalDomain d, const Complex& z, double tol = 0.0);

/// Marked boundary point carrying the slit-field pole: 1 in the disk,
/// 0 in the half-plane and in the strip.
Complex marked_boundary_point(CanonicalDomain d);

// ---------------------------------------------------------------------------
// Disk automorphisms  z -> e^{i theta} (z - a) / (1 - conj(a) z),  |a| < 1.
// ---------------------------------------------------------------------------

struct DiskAutomorphism {
  double theta = 0.0;
  Complex a = 0.0;
};

/// Apply m to z.  Requires |z| <= 1 + 1e-9; boundary points map to the
/// boundary, interior to interior.
Complex mobius_apply(const DiskAutomorphism& m, const Complex& z);

/// Composition (m1 after m2): result(z) = m1(m2(z)).
DiskAutomorphism mobius_compose(const DiskAutomorphism& m1, const DiskAutomorphism& m2);

DiskAutomorphism mobius_invert(const DiskAutomorphism& m);

Complex mobius_derivative(const DiskAutomorphism& m, const Complex& z);
Complex mobius_second_derivative(const DiskAutomorphism& m, const Complex& z);

/// Unimodular matrix representation [[p, q], [conj(q), conj(p)]] acting as
/// z -> (p z + q)/(conj(q) z + conj(p)).  Products compose exactly, which the
/// flow and reparameterization code rely on.
struct MobiusMatrix {
  Complex p{1.0, 0.0};
  Complex q{0.0, 0.0};

  static MobiusMatrix from_automorphism(const DiskAutomorphism& m);
  DiskAutomorphism to_automorphism() const;

  Complex apply(const Complex& z) const;
  Complex derivative(const Complex& z) const;
  MobiusMatrix compose(const MobiusMatrix& other) const;  // this after other
  MobiusMatrix inverse() const;
  double det() const;  // |p|^2 - |q|^2, positive for automorphisms
};

// ---------------------------------------------------------------------------
// Closed-form conformal maps between the canonical domains.
// ---------------------------------------------------------------------------

/// A composition chain of closed-form primitives: the fixed isomorphisms
/// between the canonical domains and disk automorphisms.  Supports the
/// boundary point at infinity of the half-plane.
class ConformalMap {
 public:
  ConformalMap() = default;  // identity

  static ConformalMap identity();
  static ConformalMap half_plane_to_disk();   // z -> -(z - 2i)/(z + 2i)
  static ConformalMap half_plane_to_strip();  // z -> Log((2 + z)/(2 - z))
  static ConformalMap disk_automorphism(const DiskAutomorphism& m);

  Complex apply(const Complex& z) const;
  Complex apply_inverse(const Complex& z) const;
  Complex derivative(const Complex& z) const;
  Complex second_derivative(const Complex& z) const;

  ConformalMap inverse() const;
  /// Composition: result = *this after inner.
  ConformalMap after(const ConformalMap& inner) const;

  bool is_identity() const { return steps_.empty(); }

 private:
  enum class Prim { HToD, DToH, HToS, SToH, Mobius };
  struct Step {
    Prim prim;
    DiskAutomorphism m;  // used when prim == Mobius
  };

  static Complex prim_apply(const Step& s, const Complex& z);
  static Complex prim_derivative(const Step& s, const Complex& z);
  static Complex prim_second_derivative(const Step& s, const Complex& z);
  static Step prim_inverse(const Step& s);

  std::vector<Step> steps_;  // applied left to right
};

/// The fixed isomorphism between two canonical domains (identity when equal).
ConformalMap canonical_iso(CanonicalDomain from, CanonicalDomain to);

}  // namespace slitflow::conformal
