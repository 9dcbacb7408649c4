#pragma once

#include <optional>

#include "slitflow/fields.hpp"

namespace slitflow::autoflow {

using conformal::CanonicalDomain;
using conformal::DiskAutomorphism;
using conformal::MobiusMatrix;
using fields::CompleteField;

enum class FlowClass { Elliptic, Hyperbolic, Parabolic };

struct FlowClassification {
  FlowClass cls = FlowClass::Parabolic;
  double discriminant = 0.0;  // D = 4|alpha|^2 - beta^2 = sigma_0^2 - 4 sigma_{-1} sigma_1
};

/// Classification threshold |D| <= 1e-10 for the parabolic case.
FlowClassification classify(const CompleteField& sigma);

/// Unimodular matrix of the time-t flow of sigma, acting on the disk
/// coordinates of sigma's domain.  Exact group law by construction.
MobiusMatrix flow_matrix(const CompleteField& sigma, double t);

/// Time-t flow element of the automorphism group generated by sigma, as a
/// disk automorphism (fields in the half-plane or strip are conjugated
/// through the canonical isomorphism, under which the coefficients are
/// invariant).
DiskAutomorphism flow_at(const CompleteField& sigma, double t);

/// Equals flow_at(sigma, -t).
DiskAutomorphism inverse_flow_at(const CompleteField& sigma, double t);

/// Apply the time-t flow in sigma's own domain.
Complex flow_apply(const CompleteField& sigma, double t, const Complex& z);

struct TransitTime {
  double principal = 0.0;
  /// Present in the elliptic case: all solutions are principal + k * period.
  std::optional<double> period;
};

/// Transit time T with flow_at(sigma, T) sending 1 to e^{i theta}, solved
/// from the closed-form matrix flow.  Throws std::domain_error when
/// e^{i theta} is a fixed point of sigma (unless it equals 1) or, for
/// hyperbolic flows, lies on the boundary arc the orbit of 1 never reaches.
TransitTime t_sigma(const CompleteField& sigma, double theta);

/// The piecewise closed-form transit-time expression, kept for cross-checks
/// against the contract-first computation; returns nothing when the case
/// analysis does not apply (fixed point, unreachable angle).
std::optional<double> t_sigma_printed(const CompleteField& sigma, double theta);

/// Pick the representative of t (mod period) closest to "near".
double nearest_branch(const TransitTime& t, double near);

}  // namespace slitflow::autoflow
