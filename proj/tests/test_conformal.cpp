#include <doctest.h>

#include <cmath>

#include "slitflow/conformal.hpp"

using namespace slitflow;
using namespace slitflow::conformal;

namespace {
Complex cpx(double re, double im) { return {re, im}; }
}  // namespace

TEST_CASE("canonical iso: identity case") {
  const auto id = canonical_iso(CanonicalDomain::HalfPlane, CanonicalDomain::HalfPlane);
  CHECK(id.is_identity());
  CHECK(std::abs(id.apply(cpx(1, 1)) - cpx(1, 1)) == 0.0);
}

TEST_CASE("half-plane to disk map: special values") {
  const auto phi = canonical_iso(CanonicalDomain::HalfPlane, CanonicalDomain::Disk);
  CHECK(std::abs(phi.apply(cpx(0, 2))) < 1e-15);               // 2i -> 0
  CHECK(std::abs(phi.apply(cpx(0, 0)) - 1.0) < 1e-15);         // 0 -> 1
  CHECK(std::abs(phi.apply(infinity_point()) + 1.0) < 1e-15);  // infinity -> -1
  // the formula fixes the boundary assignment; large |z| approaches -1
  CHECK(std::abs(phi.apply(cpx(1e9, 1)) + 1.0) < 1e-8);
}

TEST_CASE("half-plane to strip map: axis and infinity") {
  const auto psi = canonical_iso(CanonicalDomain::HalfPlane, CanonicalDomain::Strip);
  CHECK(std::abs(psi.apply(cpx(0, 0))) < 1e-15);  // 0 -> 0
  CHECK(std::abs(psi.apply(infinity_point()) - cpx(0, kPi)) < 1e-15);
  const Complex w = psi.apply(cpx(0.3, 0.7));
  CHECK(w.imag() > 0.0);
  CHECK(w.imag() < kPi);
}

TEST_CASE("mobius apply: basic examples") {
  CHECK(std::abs(mobius_apply({0.0, 0.0}, cpx(0.3, 0.1)) - cpx(0.3, 0.1)) < 1e-15);
  CHECK(std::abs(mobius_apply({kPi, 0.0}, cpx(1, 0)) - cpx(-1, 0)) < 1e-12);
  CHECK(std::abs(mobius_apply({0.0, cpx(0.5, 0)}, cpx(0.5, 0))) < 1e-15);
  CHECK_THROWS_AS((void)mobius_apply({0.0, 0.0}, cpx(1.1, 0)), std::domain_error);
}

TEST_CASE("mobius compose/invert: examples and exactness") {
  const DiskAutomorphism id{0.0, 0.0};
  const auto inv_id = mobius_invert(id);
  CHECK(inv_id.theta == doctest::Approx(0.0));
  CHECK(std::abs(inv_id.a) < 1e-15);

  const DiskAutomorphism m{0.8, cpx(0.3, -0.2)};
  const auto round = mobius_compose(m, mobius_invert(m));
  CHECK(std::abs(mobius_apply(round, cpx(0, 0.7)) - cpx(0, 0.7)) < 1e-13);

  const DiskAutomorphism m2{-1.1, cpx(-0.3, 0.4)};
  const auto comp = mobius_compose(m, m2);
  for (const Complex z : {cpx(0.2, 0.3), cpx(-0.6, 0.1)}) {
    CHECK(std::abs(mobius_apply(comp, z) - mobius_apply(m, mobius_apply(m2, z))) < 1e-12);
  }
}

TEST_CASE("mobius derivative: closed form vs finite differences") {
  // (1 - |a|^2)/(1 - conj(a) z)^2 at z = 0, a = 0.5: 0.75
  CHECK(std::abs(mobius_derivative({0.0, cpx(0.5, 0)}, cpx(0, 0)) - 0.75) < 1e-15);

  const DiskAutomorphism m{1.3, cpx(-0.4, 0.25)};
  const double h = 1e-6;
  for (const Complex z : {cpx(0.2, 0.3), cpx(-0.5, 0.1), cpx(0.0, -0.6)}) {
    const Complex fd = (mobius_apply(m, z + h) - mobius_apply(m, z - h)) / (2.0 * h);
    CHECK(std::abs(mobius_derivative(m, z) - fd) < 1e-8);
    const Complex fd2 =
        (mobius_apply(m, z + h) - 2.0 * mobius_apply(m, z) + mobius_apply(m, z - h)) / (h * h);
    CHECK(std::abs(mobius_second_derivative(m, z) - fd2) < 1e-4);
  }
}

TEST_CASE("group laws: associativity on sampled points") {
  const DiskAutomorphism m1{0.4, cpx(0.2, 0.1)};
  const DiskAutomorphism m2{-1.1, cpx(-0.3, 0.4)};
  const DiskAutomorphism m3{2.7, cpx(0.05, -0.55)};
  const auto left = mobius_compose(mobius_compose(m1, m2), m3);
  const auto right = mobius_compose(m1, mobius_compose(m2, m3));
  for (int k = 0; k < 20; ++k) {
    const Complex z = std::polar(0.75 * (k + 1) / 20.0, 0.37 * k);
    CHECK(std::abs(mobius_apply(left, z) - mobius_apply(right, z)) < 1e-11);
  }
}

TEST_CASE("boundary preservation") {
  const DiskAutomorphism m{0.9, cpx(0.35, 0.2)};
  for (int k = 0; k < 100; ++k) {
    const Complex z = std::polar(1.0, 2.0 * kPi * k / 100.0);
    CHECK(std::abs(std::abs(mobius_apply(m, z)) - 1.0) < 1e-12);
  }
}

TEST_CASE("canonical isos invert each other on all domain pairs") {
  const CanonicalDomain doms[] = {CanonicalDomain::HalfPlane, CanonicalDomain::Disk,
                                  CanonicalDomain::Strip};
  const Complex samples[] = {cpx(0.4, 0.8), cpx(-1.2, 0.5), cpx(0.1, 2.2)};
  for (const auto a : doms) {
    for (const auto b : doms) {
      const auto f = canonical_iso(a, b);
      const auto g = canonical_iso(b, a);
      for (const Complex zh : samples) {
        // move a half-plane sample into domain a first
        const Complex z = canonical_iso(CanonicalDomain::HalfPlane, a).apply(zh);
        CHECK(std::abs(g.apply(f.apply(z)) - z) < 1e-11);
        CHECK(std::abs(f.apply_inverse(f.apply(z)) - z) < 1e-12);
      }
    }
  }
}

TEST_CASE("conformal map derivatives through composition chains") {
  const auto f = canonical_iso(CanonicalDomain::Disk, CanonicalDomain::Strip);
  const double h = 1e-6;
  for (const Complex z : {cpx(0.2, 0.3), cpx(-0.4, 0.2), cpx(0.5, -0.1)}) {
    const Complex fd = (f.apply(z + h) - f.apply(z - h)) / (2.0 * h);
    CHECK(std::abs(f.derivative(z) - fd) < 1e-7);
    const Complex fd2 = (f.apply(z + h) - 2.0 * f.apply(z) + f.apply(z - h)) / (h * h);
    CHECK(std::abs(f.second_derivative(z) - fd2) < 1e-3);
  }
}

TEST_CASE("marked boundary points correspond under the fixed isos") {
  const auto iso_hd = canonical_iso(CanonicalDomain::HalfPlane, CanonicalDomain::Disk);
  CHECK(std::abs(iso_hd.apply(marked_boundary_point(CanonicalDomain::HalfPlane)) -
                 marked_boundary_point(CanonicalDomain::Disk)) < 1e-14);
  const auto iso_sd = canonical_iso(CanonicalDomain::Strip, CanonicalDomain::Disk);
  CHECK(std::abs(iso_sd.apply(marked_boundary_point(CanonicalDomain::Strip)) -
                 marked_boundary_point(CanonicalDomain::Disk)) < 1e-14);
}
