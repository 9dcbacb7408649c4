#pragma once

#include <array>
#include <functional>

#include "slitflow/conformal.hpp"

namespace slitflow::fields {

using conformal::CanonicalDomain;
using conformal::ConformalMap;
using conformal::DiskAutomorphism;

/// Basis vector field of index n in a canonical domain, n in [-2, 2].
/// In the half-plane it is -z^{n+1}; in the disk and strip it is the
/// pushforward through the fixed isomorphism, in closed form.
Complex ell(int n, CanonicalDomain domain, const Complex& z);
Complex ell_derivative(int n, CanonicalDomain domain, const Complex& z);

/// Field evaluated from an arbitrary basis-coefficient vector
/// (c[0] at index -2 up to c[3] at index 1).
Complex eval_basis(const std::array<double, 4>& c, CanonicalDomain domain, const Complex& z);
Complex eval_basis_derivative(const std::array<double, 4>& c, CanonicalDomain domain,
                              const Complex& z);

// ---------------------------------------------------------------------------
// Coefficient records
// ---------------------------------------------------------------------------

/// Generator of a one-parameter automorphism group: sigma_{-1} l_{-1} +
/// sigma_0 l_0 + sigma_1 l_1 with real coefficients.
struct CompleteField {
  double sigma_m1 = 0.0;
  double sigma_0 = 0.0;
  double sigma_1 = 0.0;
  CanonicalDomain domain = CanonicalDomain::Disk;

  Complex eval(const Complex& z) const;
  Complex derivative(const Complex& z) const;
};

/// Quadratic-polynomial representation of a complete field in the disk:
/// V(z) = (a + ib) - i c z + (-a + ib) z^2.
struct CompleteDiskForm {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  Complex eval(const Complex& z) const;
  /// Constant term a + ib.
  Complex alpha() const { return {a, b}; }
  /// Rotation coefficient c (of -i c z).
  double beta() const { return c; }
};

/// Generator of a slit semiflow: b_{-2} l_{-2} + ... + b_1 l_1 with
/// b_{-2} > 0 (strict; construction rejects anything else).
struct SlitField {
  double b_m2 = 2.0;
  double b_m1 = 0.0;
  double b_0 = 0.0;
  double b_1 = 0.0;
  CanonicalDomain domain = CanonicalDomain::Disk;

  SlitField() = default;
  SlitField(double bm2, double bm1, double b0, double b1,
            CanonicalDomain dom = CanonicalDomain::Disk);

  Complex eval(const Complex& z) const;
  Complex derivative(const Complex& z) const;
  std::array<double, 4> coefficients() const { return {b_m2, b_m1, b_0, b_1}; }
};

/// Disk form of a slit field with a boundary pole at z0:
/// V(z) = alpha - z (i beta + gamma (z0 + z)/(z0 - z)) - conj(alpha) z^2.
/// gamma = 0 is allowed for diagnostics (the field is then complete).
struct HerglotzSlitForm {
  Complex alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  Complex pole{1.0, 0.0};

  Complex eval(const Complex& z) const;
  Complex derivative(const Complex& z) const;
};

// ---------------------------------------------------------------------------
// Conversions (exact coefficient algebra, round trips are identities)
// ---------------------------------------------------------------------------

CompleteDiskForm to_disk_form(const CompleteField& f);
CompleteField from_disk_form(const CompleteDiskForm& f,
                             CanonicalDomain domain = CanonicalDomain::Disk);

/// Herglotz form of a slit field (pole at 1):
/// b_{-2} = 2 gamma, b_{-1} = beta - 2 Im alpha, b_0 = gamma/2 + 2 Re alpha,
/// b_1 = (beta + 2 Im alpha)/4.
HerglotzSlitForm slit_to_herglotz(const SlitField& f);
/// Inverse conversion.  Requires pole == 1 (transform other poles back with
/// mobius_transform_slit first) and gamma > 0.
SlitField herglotz_to_slit(const HerglotzSlitForm& h,
                           CanonicalDomain domain = CanonicalDomain::Disk);

// ---------------------------------------------------------------------------
// Function-level operations
// ---------------------------------------------------------------------------

using FieldFn = std::function<Complex(const Complex&)>;

/// Pushforward of a field by a conformal map:
/// (phi_* V)(z) = phi'(phi^{-1}(z)) V(phi^{-1}(z)).
FieldFn pushforward(FieldFn field, const ConformalMap& map);

/// Coefficient transform of a slit Herglotz form under a disk automorphism.
/// alpha and gamma follow the closed-form transformation rules; beta is
/// extracted from the derivative of the pushforward at 0, which is exact for
/// Mobius maps.  Agrees pointwise with pushforward().
HerglotzSlitForm mobius_transform_slit(const HerglotzSlitForm& h, const DiskAutomorphism& m);

struct SemicompleteReport {
  bool semicomplete = false;
  double min_re_q = 0.0;
};

/// Sampled check of the semiflow-generator criterion: recover
/// q(z) = (V(0) - V(z))/z - conj(V(0)) z on a radial-angular grid and test
/// min Re q >= -1e-9.  The field must be finite at 0.
SemicompleteReport semicomplete_check(const FieldFn& field, int radial_samples = 64,
                                      int angular_samples = 32);

}  // namespace slitflow::fields
