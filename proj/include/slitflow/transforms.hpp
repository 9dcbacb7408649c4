#pragma once

#include <string>
#include <vector>

#include "slitflow/driving.hpp"
#include "slitflow/fields.hpp"

namespace slitflow::transforms {

using fields::CompleteField;
using fields::SlitField;

/// The elementary transformations of a chain triple (b, sigma, u_t):
///   V: driver scaling        (b, c sigma, u/c),          c != 0
///   T: time scaling          (c b, sigma, u_{ct}),       c > 0
///   D: drift                 (b + c sigma, sigma, u + ct)
///   R: conjugation by the flow of l_1  (coefficient polynomial in c)
///   S: conjugation by the flow of l_0  (b_n -> e^{nc} b_n)
///   S0: normalization-preserving scaling V_{e^c} T_{e^{2c}} S_c
enum class TransformKind { V, T, D, R, S, S0 };

const char* transform_name(TransformKind k);
TransformKind transform_from_name(const std::string& name);

struct ElementaryTransform {
  TransformKind kind;
  double c = 0.0;
};

struct ChainTriple {
  SlitField b;
  CompleteField sigma;
  driving::DrivingPath u;
};

/// Coefficient and driving-path update, exact real arithmetic on the
/// coefficients; driving paths are resampled on their original step.
ChainTriple apply(const ElementaryTransform& tr, const ChainTriple& triple);

/// Coefficient-only version for contexts without a concrete path (the
/// stochastic normalization).
void apply_to_coefficients(const ElementaryTransform& tr, SlitField& b, CompleteField& sigma);

struct NormalizationRecord {
  std::vector<ElementaryTransform> applied;  // V, T, D in order
  ChainTriple result;
  double residual_b;      // b_{-2} - 2
  double residual_sigma;  // sigma_{-1} - 1
  double residual_drift;  // -2 b_{-1}/b_{-2} + 3 sigma_0/sigma_{-1}
};

/// Gauge fixing: V_{1/sigma_{-1}}, then T_{2/b_{-2}}, then the drift D_c
/// with c = (3/2 b_{-2} sigma_0 - b_{-1})/sigma_{-1} computed from the
/// current (already V,T-normalized) coefficients.  Idempotent.
NormalizationRecord normalize(const ChainTriple& triple);

bool is_normalized(const SlitField& b, const CompleteField& sigma, double tol = 1e-9);

struct StochasticNormalization {
  SlitField b;
  CompleteField sigma;
  double kappa;
  double mu;
  std::vector<ElementaryTransform> applied;
};

/// Normalization of a chain driven by sqrt(kappa) B_t + mu t; Brownian
/// scaling recalculates kappa~ = 2 kappa sigma_{-1}^2 / b_{-2} and
/// mu~ = (2 sigma_{-1}/b_{-2}) mu + c_D.
StochasticNormalization normalize_stochastic(const SlitField& b, const CompleteField& sigma,
                                             double kappa, double mu);

}  // namespace slitflow::transforms
