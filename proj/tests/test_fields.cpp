#include <doctest.h>

#include <cmath>
#include <vector>

#include "slitflow/fields.hpp"

using namespace slitflow;
using namespace slitflow::fields;
using conformal::CanonicalDomain;
using conformal::canonical_iso;

namespace {

Complex cpx(double re, double im) { return {re, im}; }

std::vector<Complex> disk_samples(int n) {
  std::vector<Complex> z;
  for (int k = 0; k < n; ++k) {
    z.push_back(std::polar(0.15 + 0.8 * (k % 10) / 10.0, 0.61 * k));
  }
  return z;
}

std::vector<Complex> half_plane_samples(int n) {
  std::vector<Complex> z;
  for (int k = 0; k < n; ++k) {
    z.push_back(cpx(-2.0 + 4.0 * (k % 10) / 9.0, 0.3 + 2.5 * (k % 7) / 6.0));
  }
  return z;
}

}  // namespace

TEST_CASE("basis fields: frozen values") {
  CHECK(std::abs(ell(-2, CanonicalDomain::HalfPlane, cpx(2, 0)) - cpx(-0.5, 0)) < 1e-15);
  CHECK(std::abs(ell(-2, CanonicalDomain::Disk, cpx(0, 0)) - cpx(-0.125, 0)) < 1e-15);
  // l_{-1} in the disk is -(i/4)(z+1)^2
  for (const Complex z : disk_samples(5)) {
    const Complex expect = -0.25 * kImagUnit * (z + 1.0) * (z + 1.0);
    CHECK(std::abs(ell(-1, CanonicalDomain::Disk, z) - expect) < 1e-14);
  }
  CHECK_THROWS_AS((void)ell(-2, CanonicalDomain::Disk, cpx(1, 0)), std::domain_error);
  CHECK_THROWS_AS((void)ell(-2, CanonicalDomain::HalfPlane, cpx(0, 0)), std::domain_error);
  CHECK_THROWS_AS((void)ell(3, CanonicalDomain::Disk, cpx(0, 0)), std::invalid_argument);
}

TEST_CASE("basis fields agree with the numeric pushforward, disk and strip") {
  const auto phi = canonical_iso(CanonicalDomain::HalfPlane, CanonicalDomain::Disk);
  const auto psi = canonical_iso(CanonicalDomain::HalfPlane, CanonicalDomain::Strip);
  for (int n = -2; n <= 2; ++n) {
    FieldFn up = [n](const Complex& z) { return -std::pow(z, n + 1); };
    const auto pf_disk = pushforward(up, phi);
    const auto pf_strip = pushforward(up, psi);
    for (const Complex z : disk_samples(100)) {
      CHECK(std::abs(pf_disk(z) - ell(n, CanonicalDomain::Disk, z)) < 1e-10);
    }
    for (const Complex zh : half_plane_samples(100)) {
      const Complex zs = psi.apply(zh);
      CHECK(std::abs(pf_strip(zs) - ell(n, CanonicalDomain::Strip, zs)) < 1e-10);
    }
  }
}

TEST_CASE("basis field derivatives vs finite differences") {
  const double h = 1e-6;
  for (int n = -2; n <= 2; ++n) {
    for (const auto dom : {CanonicalDomain::Disk, CanonicalDomain::Strip}) {
      const Complex z = dom == CanonicalDomain::Disk ? cpx(0.2, 0.35) : cpx(0.4, 1.2);
      const Complex fd = (ell(n, dom, z + h) - ell(n, dom, z - h)) / (2.0 * h);
      CHECK(std::abs(ell_derivative(n, dom, z) - fd) < 1e-8);
    }
  }
}

TEST_CASE("preset field evaluation: frozen values") {
  // radial pair in the disk
  const SlitField b_rad(2.0, 0.0, 0.5, 0.0, CanonicalDomain::Disk);
  CHECK(std::abs(b_rad.eval(cpx(0.2, 0)) - cpx(-0.3, 0)) < 1e-14);
  for (const Complex z : disk_samples(8)) {
    CHECK(std::abs(b_rad.eval(z) - (-z * (1.0 + z) / (1.0 - z))) < 1e-13);
  }
  const CompleteField s_rad{1.0, 0.0, 0.25, CanonicalDomain::Disk};
  CHECK(std::abs(s_rad.eval(cpx(0, 1)) - cpx(1, 0)) < 1e-14);  // -i z at z = i
  // attracting-boundary-point field at 0
  const SlitField b_abp(2.0, 0.0, 0.0, 0.0, CanonicalDomain::Disk);
  CHECK(std::abs(b_abp.eval(cpx(0, 0)) - cpx(-0.25, 0)) < 1e-15);
}

TEST_CASE("slit field construction rejects nonpositive leading coefficient") {
  CHECK_THROWS_AS(SlitField(0.0, 0.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(SlitField(-1.0, 0.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("pushforward: identity, normalization value, linearity") {
  const auto phi = canonical_iso(CanonicalDomain::HalfPlane, CanonicalDomain::Disk);
  FieldFn minus_one = [](const Complex&) { return Complex{-1.0, 0.0}; };
  const auto pf = pushforward(minus_one, phi);
  CHECK(std::abs(pf(cpx(1, 0)) - cpx(0, -1)) < 1e-13);  // sigma(1) = -i in the disk

  FieldFn some = [](const Complex& z) { return z * z - 0.3 * z; };
  const auto idpf = pushforward(some, conformal::ConformalMap::identity());
  for (const Complex z : disk_samples(5)) CHECK(std::abs(idpf(z) - some(z)) < 1e-15);

  FieldFn f1 = [](const Complex& z) { return -1.0 / z; };
  FieldFn f2 = [](const Complex& z) { return -z * z; };
  FieldFn combo = [&](const Complex& z) { return 0.7 * f1(z) - 1.9 * f2(z); };
  const auto p1 = pushforward(f1, phi);
  const auto p2 = pushforward(f2, phi);
  const auto pc = pushforward(combo, phi);
  for (const Complex z : disk_samples(20)) {
    CHECK(std::abs(pc(z) - (0.7 * p1(z) - 1.9 * p2(z))) < 1e-11);
  }
}

TEST_CASE("time-frozen chordal field in the disk") {
  // push -2/(z - u) through the fixed half-plane-to-disk map
  const auto phi = canonical_iso(CanonicalDomain::HalfPlane, CanonicalDomain::Disk);
  for (const double u : {-1.0, 0.0, 2.0}) {
    FieldFn chordal = [u](const Complex& z) { return -2.0 / (z - u); };
    const auto pf = pushforward(chordal, phi);
    for (const Complex z : disk_samples(40)) {
      const Complex expect = 0.5 * kImagUnit * std::pow(z + 1.0, 3) /
                             (z * (u + 2.0 * kImagUnit) + u - 2.0 * kImagUnit);
      CHECK(std::abs(pf(z) - expect) < 1e-9);
    }
  }
}

TEST_CASE("herglotz form conversions") {
  // gamma = 1 with vanishing polynomial part is the radial slit field
  const HerglotzSlitForm h0{0.0, 0.0, 1.0, cpx(1, 0)};
  const auto b0 = herglotz_to_slit(h0);
  CHECK(b0.b_m2 == doctest::Approx(2.0));
  CHECK(b0.b_m1 == doctest::Approx(0.0));
  CHECK(b0.b_0 == doctest::Approx(0.5));
  CHECK(b0.b_1 == doctest::Approx(0.0));

  // round trip
  const SlitField b(2.0, 1.0, -0.5, 0.25, CanonicalDomain::Disk);
  const auto h = slit_to_herglotz(b);
  const auto back = herglotz_to_slit(h);
  CHECK(back.b_m2 == doctest::Approx(b.b_m2).epsilon(1e-12));
  CHECK(back.b_m1 == doctest::Approx(b.b_m1).epsilon(1e-12));
  CHECK(back.b_0 == doctest::Approx(b.b_0).epsilon(1e-12));
  CHECK(back.b_1 == doctest::Approx(b.b_1).epsilon(1e-12));

  // the attracting-boundary-point field
  const auto h_abp = slit_to_herglotz(SlitField(2.0, 0.0, 0.0, 0.0, CanonicalDomain::Disk));
  CHECK(std::abs(h_abp.alpha - cpx(-0.25, 0)) < 1e-15);
  CHECK(h_abp.beta == doctest::Approx(0.0));
  CHECK(h_abp.gamma == doctest::Approx(1.0));

  // form evaluation matches the coefficient evaluation
  for (const Complex z : disk_samples(25)) {
    CHECK(std::abs(h.eval(z) - b.eval(z)) < 1e-12);
  }

  CHECK_THROWS_AS((void)herglotz_to_slit(HerglotzSlitForm{0.0, 0.0, 0.0, cpx(1, 0)}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)herglotz_to_slit(HerglotzSlitForm{0.0, 0.0, 1.0, cpx(0, 1)}),
                  std::invalid_argument);
}

TEST_CASE("complete field conversions") {
  const CompleteField radial{1.0, 0.0, 0.25, CanonicalDomain::Disk};
  const auto f = to_disk_form(radial);
  CHECK(f.a == doctest::Approx(0.0));
  CHECK(f.b == doctest::Approx(0.0));
  CHECK(f.c == doctest::Approx(1.0));  // V(z) = -i z

  const CompleteField chordal{1.0, 0.0, 0.0, CanonicalDomain::Disk};
  const auto g = to_disk_form(chordal);
  CHECK(g.a == doctest::Approx(0.0));
  CHECK(g.b == doctest::Approx(-0.25));
  CHECK(g.c == doctest::Approx(0.5));

  const auto zero = from_disk_form(CompleteDiskForm{0.0, 0.0, 0.0});
  CHECK(zero.sigma_m1 == doctest::Approx(0.0));
  CHECK(zero.sigma_0 == doctest::Approx(0.0));
  CHECK(zero.sigma_1 == doctest::Approx(0.0));

  // round trip and evaluation agreement
  const CompleteField s{0.7, -1.3, 0.45, CanonicalDomain::Disk};
  const auto back = from_disk_form(to_disk_form(s));
  CHECK(back.sigma_m1 == doctest::Approx(s.sigma_m1).epsilon(1e-12));
  CHECK(back.sigma_0 == doctest::Approx(s.sigma_0).epsilon(1e-12));
  CHECK(back.sigma_1 == doctest::Approx(s.sigma_1).epsilon(1e-12));
  for (const Complex z : disk_samples(25)) {
    CHECK(std::abs(to_disk_form(s).eval(z) - s.eval(z)) < 1e-12);
  }
}

TEST_CASE("slit form transform under disk automorphisms") {
  const HerglotzSlitForm h{cpx(0.37, -0.85), 0.6, 1.0, cpx(1, 0)};

  SUBCASE("identity leaves the form unchanged") {
    const auto out = mobius_transform_slit(h, {0.0, 0.0});
    CHECK(std::abs(out.alpha - h.alpha) < 1e-14);
    CHECK(out.beta == doctest::Approx(h.beta).epsilon(1e-12));
    CHECK(out.gamma == doctest::Approx(h.gamma).epsilon(1e-12));
  }

  SUBCASE("pointwise agreement with the pushforward") {
    const conformal::DiskAutomorphism m{0.7, cpx(0.3, 0.0)};
    const auto out = mobius_transform_slit(h, m);
    FieldFn hf = [&](const Complex& z) { return h.eval(z); };
    const auto pf = pushforward(hf, conformal::ConformalMap::disk_automorphism(m));
    for (int k = 0; k < 50; ++k) {
      const Complex z = std::polar(0.12 + 0.75 * (k % 10) / 10.0, 0.77 * k);
      CHECK(std::abs(out.eval(z) - pf(z)) < 1e-9);
    }
    // leading coefficient transforms with the scaled field value at a
    const Complex expect_alpha = std::exp(kImagUnit * 0.7) / (1.0 - 0.09) * h.eval(cpx(0.3, 0));
    CHECK(std::abs(out.alpha - expect_alpha) < 1e-12);
  }

  SUBCASE("rotations preserve the pole weight") {
    const auto out = mobius_transform_slit(h, {kPi / 3.0, 0.0});
    CHECK(out.gamma == doctest::Approx(h.gamma).epsilon(1e-12));
  }

  SUBCASE("closed-form rotation coefficient matches the printed rule") {
    const conformal::DiskAutomorphism m{-0.45, cpx(0.22, -0.31)};
    const auto out = mobius_transform_slit(h, m);
    const Complex a = m.a;
    const Complex z0 = h.pole;
    const double num =
        4.0 * std::imag(a * std::conj(h.alpha)) + h.beta * (1.0 + std::norm(a)) +
        4.0 * h.gamma * std::imag(a * std::conj(z0)) *
            (-(1.0 + std::norm(a)) / std::pow(std::abs(a - z0), 4) * std::real(a * std::conj(z0)) +
             (1.0 + std::norm(a) * std::norm(a)) / std::pow(std::abs(a - z0), 4));
    CHECK(out.beta == doctest::Approx(num / (1.0 - std::norm(a))).epsilon(1e-9));
  }
}

TEST_CASE("semicompleteness of the basis generators") {
  FieldFn lm2 = [](const Complex& z) { return ell(-2, CanonicalDomain::Disk, z); };
  FieldFn l2 = [](const Complex& z) { return ell(2, CanonicalDomain::Disk, z); };
  FieldFn neg_l2 = [&](const Complex& z) { return -l2(z); };

  const auto r1 = semicomplete_check(lm2);
  CHECK(r1.semicomplete);
  const auto r2 = semicomplete_check(neg_l2);
  CHECK(r2.semicomplete);
  const auto r3 = semicomplete_check(l2);
  CHECK_FALSE(r3.semicomplete);
  CHECK(r3.min_re_q < -1e-3);

  // recovered q for l_{-2} is (1/2)(1+z)/(1-z)
  const Complex z = cpx(0.3, 0.4);
  const Complex v0 = lm2(cpx(0, 0));
  const Complex q = (v0 - lm2(z)) / z - std::conj(v0) * z;
  CHECK(std::abs(q - 0.5 * (1.0 + z) / (1.0 - z)) < 1e-13);
}

TEST_CASE("semicomplete cone property") {
  // nonnegative combinations of l_{-2} and complete fields stay semicomplete
  const CompleteField s1{1.0, 0.3, 0.2, CanonicalDomain::Disk};
  const CompleteField s2{-0.5, 0.1, 0.6, CanonicalDomain::Disk};
  for (const double w1 : {0.0, 0.7, 2.5}) {
    for (const double w2 : {0.0, 1.1}) {
      FieldFn f = [&, w1, w2](const Complex& z) {
        return w1 * ell(-2, CanonicalDomain::Disk, z) + w2 * s1.eval(z) + 0.4 * s2.eval(z);
      };
      CHECK(semicomplete_check(f).semicomplete);
    }
  }
}
