#include <doctest.h>

#include <cmath>

#include "slitflow/autoflow.hpp"

using namespace slitflow;
using namespace slitflow::autoflow;
using conformal::CanonicalDomain;
using conformal::mobius_apply;
using fields::CompleteField;

namespace {

Complex cpx(double re, double im) { return {re, im}; }

const CompleteField kRadialSigma{1.0, 0.0, 0.25, CanonicalDomain::Disk};   // -i z
const CompleteField kChordalSigmaD{1.0, 0.0, 0.0, CanonicalDomain::Disk};  // -(i/4)(1+z)^2
const CompleteField kDipolarSigmaD{1.0, 0.0, -0.25, CanonicalDomain::Disk};

}  // namespace

TEST_CASE("flow classification by the discriminant") {
  CHECK(classify(kRadialSigma).cls == FlowClass::Elliptic);
  CHECK(classify(kRadialSigma).discriminant == doctest::Approx(-1.0));
  CHECK(classify(kChordalSigmaD).cls == FlowClass::Parabolic);
  CHECK(classify(kChordalSigmaD).discriminant == doctest::Approx(0.0));
  CHECK(classify(kDipolarSigmaD).cls == FlowClass::Hyperbolic);
  CHECK(classify(kDipolarSigmaD).discriminant == doctest::Approx(1.0));
}

TEST_CASE("rotation flow closed form") {
  const double t = 0.7;
  const auto h = flow_at(kRadialSigma, t);
  for (const Complex z : {cpx(0.3, 0.1), cpx(-0.2, 0.6), cpx(0, 0)}) {
    CHECK(std::abs(mobius_apply(h, z) - z * std::exp(-kImagUnit * t)) < 1e-13);
  }
}

TEST_CASE("translation flow in the half-plane") {
  const CompleteField sigma{1.0, 0.0, 0.0, CanonicalDomain::HalfPlane};  // -1
  for (const double t : {0.3, -1.2, 2.0}) {
    for (const Complex z : {cpx(0.5, 1.0), cpx(-2.0, 0.4)}) {
      CHECK(std::abs(flow_apply(sigma, t, z) - (z - t)) < 1e-10);
    }
  }
}

TEST_CASE("time zero is the identity") {
  for (const auto& sigma : {kRadialSigma, kChordalSigmaD, kDipolarSigmaD}) {
    const auto h = flow_at(sigma, 0.0);
    CHECK(std::abs(h.a) < 1e-15);
    CHECK(std::abs(std::exp(kImagUnit * h.theta) - 1.0) < 1e-15);
  }
}

TEST_CASE("group law and scaling") {
  const CompleteField sigma{0.8, -0.3, 0.45, CanonicalDomain::Disk};
  const double s = 0.37, t = -0.91;
  const auto hs = flow_at(sigma, s);
  const auto ht = flow_at(sigma, t);
  const auto hst = flow_at(sigma, s + t);
  const auto comp = conformal::mobius_compose(hs, ht);
  for (const Complex z : {cpx(0.2, 0.4), cpx(-0.5, -0.1)}) {
    CHECK(std::abs(mobius_apply(hst, z) - mobius_apply(comp, z)) < 1e-10);
  }

  // flow of c sigma at t equals flow of sigma at c t
  const double c = 1.7;
  const CompleteField scaled{c * sigma.sigma_m1, c * sigma.sigma_0, c * sigma.sigma_1,
                             sigma.domain};
  const auto a = flow_at(scaled, t);
  const auto b = flow_at(sigma, c * t);
  for (const Complex z : {cpx(0.2, 0.4), cpx(-0.5, -0.1)}) {
    CHECK(std::abs(mobius_apply(a, z) - mobius_apply(b, z)) < 1e-10);
  }
}

TEST_CASE("flow solves the generator equation") {
  for (const auto& sigma : {kRadialSigma, kChordalSigmaD, kDipolarSigmaD}) {
    const double dt = 1e-5;
    for (const double t : {0.0, 0.4, 1.3}) {
      for (const Complex z : {cpx(0.3, 0.2), cpx(-0.4, 0.5)}) {
        const Complex fd =
            (mobius_apply(flow_at(sigma, t + dt), z) - mobius_apply(flow_at(sigma, t - dt), z)) /
            (2.0 * dt);
        const Complex ht = mobius_apply(flow_at(sigma, t), z);
        CHECK(std::abs(fd - sigma.eval(ht)) < 1e-6);
      }
    }
  }
}

TEST_CASE("inverse flow") {
  const auto inv0 = inverse_flow_at(kRadialSigma, 0.0);
  CHECK(std::abs(inv0.a) < 1e-15);

  // radial inverse rotates the other way: z e^{+it}
  const auto inv = inverse_flow_at(kRadialSigma, kPi / 2.0);
  CHECK(std::abs(mobius_apply(inv, cpx(1, 0)) - cpx(0, 1)) < 1e-13);

  const CompleteField sigma{0.8, -0.3, 0.45, CanonicalDomain::Disk};
  const auto comp = conformal::mobius_compose(flow_at(sigma, 0.6), inverse_flow_at(sigma, 0.6));
  for (const Complex z : {cpx(0.2, 0.4), cpx(-0.5, -0.1)}) {
    CHECK(std::abs(mobius_apply(comp, z) - z) < 1e-11);
  }

  // inverse-flow PDE: d/dt h_{-t}(z) = -h_{-t}'(z) sigma(z)
  const double dt = 1e-5;
  for (const double t : {0.2, 0.9}) {
    for (const Complex z : {cpx(0.3, 0.2), cpx(-0.1, -0.5)}) {
      const Complex fd =
          (mobius_apply(inverse_flow_at(sigma, t + dt), z) -
           mobius_apply(inverse_flow_at(sigma, t - dt), z)) /
          (2.0 * dt);
      const Complex expect =
          -conformal::mobius_derivative(inverse_flow_at(sigma, t), z) * sigma.eval(z);
      CHECK(std::abs(fd - expect) < 1e-6);
    }
  }
}

TEST_CASE("flow pushforward of its own generator is the generator") {
  const CompleteField sigma{0.8, -0.3, 0.45, CanonicalDomain::Disk};
  const auto hs = flow_at(sigma, 0.83);
  fields::FieldFn f = [&](const Complex& z) { return sigma.eval(z); };
  const auto pf = fields::pushforward(f, conformal::ConformalMap::disk_automorphism(hs));
  for (const Complex z : {cpx(0.2, 0.4), cpx(-0.5, -0.1), cpx(0.6, 0.3)}) {
    CHECK(std::abs(pf(z) - sigma.eval(z)) < 1e-9);
  }
}

TEST_CASE("transit time: rotation flow") {
  for (const double theta : {0.4, -0.9, 2.0, 3.0}) {
    const auto t = t_sigma(kRadialSigma, theta);
    CHECK(t.principal == doctest::Approx(-theta).epsilon(1e-12));
    REQUIRE(t.period.has_value());
    CHECK(*t.period == doctest::Approx(2.0 * kPi));
    CHECK(std::abs(mobius_apply(flow_at(kRadialSigma, t.principal), cpx(1, 0)) -
                   std::polar(1.0, theta)) < 1e-9);
  }
}

TEST_CASE("transit time: trivial and fixed-point cases") {
  CHECK(t_sigma(kRadialSigma, 0.0).principal == doctest::Approx(0.0));
  // the dipolar generator vanishes at -1 (theta = pi)
  CHECK_THROWS_AS((void)t_sigma(kDipolarSigmaD, kPi), std::domain_error);
}

TEST_CASE("transit time: parabolic flow matches the translation picture") {
  // in the half-plane the flow of -1 is z - t; T(phi(-x)) = x
  const auto phi = conformal::canonical_iso(CanonicalDomain::HalfPlane, CanonicalDomain::Disk);
  for (const double x : {1.0, 2.0, 5.0}) {
    const Complex target = phi.apply(cpx(-x, 0));
    const auto t = t_sigma(kChordalSigmaD, std::arg(target));
    CHECK(t.principal == doctest::Approx(x).epsilon(1e-9));
    CHECK_FALSE(t.period.has_value());
  }
}

TEST_CASE("transit time against the piecewise closed form") {
  // elliptic and hyperbolic branches agree; the parabolic branch of the
  // printed expression returns the time with the opposite sign, so only its
  // magnitude is compared there
  const CompleteField elliptic2{1.0, 0.3, 0.2, CanonicalDomain::Disk};
  const CompleteField hyper2{1.0, 0.8, 0.1, CanonicalDomain::Disk};
  for (const double theta : {0.4, -0.9, 2.0}) {
    const auto te = t_sigma(elliptic2, theta);
    const auto tp = t_sigma_printed(elliptic2, theta);
    REQUIRE(tp.has_value());
    CHECK(te.principal == doctest::Approx(*tp).epsilon(1e-6));

    const auto th = t_sigma(hyper2, theta);
    const auto tph = t_sigma_printed(hyper2, theta);
    REQUIRE(tph.has_value());
    CHECK(th.principal == doctest::Approx(*tph).epsilon(1e-6));
  }
  for (const double theta : {0.4, -0.9}) {
    const auto tc = t_sigma(kChordalSigmaD, theta);
    const auto tp = t_sigma_printed(kChordalSigmaD, theta);
    REQUIRE(tp.has_value());
    CHECK(std::abs(tc.principal) == doctest::Approx(std::abs(*tp)).epsilon(1e-6));
    CHECK(tc.principal == doctest::Approx(-*tp).epsilon(1e-6));
  }
}

TEST_CASE("transit time: hyperbolic reachability") {
  // the dipolar flow moves 1 along the upper or lower arc between the fixed
  // points; angles on the far side are unreachable
  const auto cls = classify(kDipolarSigmaD);
  REQUIRE(cls.cls == FlowClass::Hyperbolic);
  const auto t = t_sigma(kDipolarSigmaD, 0.5);
  CHECK(std::abs(mobius_apply(flow_at(kDipolarSigmaD, t.principal), cpx(1, 0)) -
                 std::polar(1.0, 0.5)) < 1e-9);
}

TEST_CASE("flow continuity in time") {
  const CompleteField sigma{0.8, -0.3, 0.45, CanonicalDomain::Disk};
  const double delta = 1e-6;
  for (const double t : {0.0, 0.7, 2.1}) {
    for (const Complex z : {cpx(0.2, 0.4), cpx(-0.5, -0.1)}) {
      const double move =
          std::abs(mobius_apply(flow_at(sigma, t + delta), z) - mobius_apply(flow_at(sigma, t), z));
      CHECK(move <= 10.0 * delta);
    }
  }
}
