#include "slitflow/transforms.hpp"

#include <cmath>
#include <stdexcept>

namespace slitflow::transforms {

const char* transform_name(TransformKind k) {
  switch (k) {
    case TransformKind::V: return "V";
    case TransformKind::T: return "T";
    case TransformKind::D: return "D";
    case TransformKind::R: return "R";
    case TransformKind::S: return "S";
    case TransformKind::S0: return "S0";
  }
  return "?";
}

TransformKind transform_from_name(const std::string& name) {
  if (name == "V") return TransformKind::V;
  if (name == "T") return TransformKind::T;
  if (name == "D") return TransformKind::D;
  if (name == "R") return TransformKind::R;
  if (name == "S") return TransformKind::S;
  if (name == "S0") return TransformKind::S0;
  throw std::invalid_argument("unknown transform kind: " + name);
}

void apply_to_coefficients(const ElementaryTransform& tr, SlitField& b, CompleteField& sigma) {
  const double c = tr.c;
  switch (tr.kind) {
    case TransformKind::V: {
      if (c == 0.0) throw std::invalid_argument("transform V: c must be nonzero");
      sigma.sigma_m1 *= c;
      sigma.sigma_0 *= c;
      sigma.sigma_1 *= c;
      return;
    }
    case TransformKind::T: {
      if (!(c > 0.0)) throw std::invalid_argument("transform T: c must be positive");
      b = SlitField(c * b.b_m2, c * b.b_m1, c * b.b_0, c * b.b_1, b.domain);
      return;
    }
    case TransformKind::D: {
      b = SlitField(b.b_m2, b.b_m1 + c * sigma.sigma_m1, b.b_0 + c * sigma.sigma_0,
                    b.b_1 + c * sigma.sigma_1, b.domain);
      return;
    }
    case TransformKind::R: {
      const double bm2 = b.b_m2, bm1 = b.b_m1, b0 = b.b_0, b1 = b.b_1;
      b = SlitField(bm2, bm1 - 3.0 * c * bm2, b0 - 2.0 * c * bm1 + 3.0 * c * c * bm2,
                    b1 - c * b0 + c * c * bm1 - c * c * c * bm2, b.domain);
      const double sm1 = sigma.sigma_m1, s0 = sigma.sigma_0, s1 = sigma.sigma_1;
      sigma.sigma_0 = s0 - 2.0 * c * sm1;
      sigma.sigma_1 = s1 - c * s0 + c * c * sm1;
      return;
    }
    case TransformKind::S: {
      const double e = std::exp(c);
      b = SlitField(b.b_m2 / (e * e), b.b_m1 / e, b.b_0, b.b_1 * e, b.domain);
      sigma.sigma_m1 /= e;
      sigma.sigma_1 *= e;
      return;
    }
    case TransformKind::S0: {
      const double e = std::exp(c);
      b = SlitField(b.b_m2, b.b_m1 * e, b.b_0 * e * e, b.b_1 * e * e * e, b.domain);
      sigma.sigma_0 *= e;
      sigma.sigma_1 *= e * e;
      return;
    }
  }
}

ChainTriple apply(const ElementaryTransform& tr, const ChainTriple& triple) {
  ChainTriple out = triple;
  apply_to_coefficients(tr, out.b, out.sigma);
  switch (tr.kind) {
    case TransformKind::V:
      out.u = driving::scale_values(triple.u, 1.0 / tr.c);
      break;
    case TransformKind::T:
      out.u = driving::time_scale(triple.u, tr.c);
      break;
    case TransformKind::D:
      out.u = driving::add_drift(triple.u, tr.c);
      break;
    case TransformKind::R:
    case TransformKind::S:
      break;  // the driver is untouched
    case TransformKind::S0: {
      const double e = std::exp(tr.c);
      out.u = driving::scale_values(driving::time_scale(triple.u, e * e), 1.0 / e);
      break;
    }
  }
  return out;
}

NormalizationRecord normalize(const ChainTriple& triple) {
  if (triple.sigma.sigma_m1 == 0.0) {
    throw std::invalid_argument("normalize: sigma[-1] must be nonzero");
  }
  NormalizationRecord rec{{}, triple, 0.0, 0.0, 0.0};

  const ElementaryTransform v{TransformKind::V, 1.0 / rec.result.sigma.sigma_m1};
  rec.result = apply(v, rec.result);
  rec.applied.push_back(v);

  const ElementaryTransform t{TransformKind::T, 2.0 / rec.result.b.b_m2};
  rec.result = apply(t, rec.result);
  rec.applied.push_back(t);

  // drift parameter from the current (already V,T-normalized) coefficients
  const double c_d = (1.5 * rec.result.b.b_m2 * rec.result.sigma.sigma_0 - rec.result.b.b_m1) /
                     rec.result.sigma.sigma_m1;
  const ElementaryTransform d{TransformKind::D, c_d};
  rec.result = apply(d, rec.result);
  rec.applied.push_back(d);

  rec.residual_b = rec.result.b.b_m2 - 2.0;
  rec.residual_sigma = rec.result.sigma.sigma_m1 - 1.0;
  rec.residual_drift = -2.0 * rec.result.b.b_m1 / rec.result.b.b_m2 +
                       3.0 * rec.result.sigma.sigma_0 / rec.result.sigma.sigma_m1;
  return rec;
}

bool is_normalized(const SlitField& b, const CompleteField& sigma, double tol) {
  if (sigma.sigma_m1 == 0.0) return false;
  const double c3 = -2.0 * b.b_m1 / b.b_m2 + 3.0 * sigma.sigma_0 / sigma.sigma_m1;
  return std::abs(b.b_m2 - 2.0) <= tol && std::abs(sigma.sigma_m1 - 1.0) <= tol &&
         std::abs(c3) <= tol;
}

StochasticNormalization normalize_stochastic(const SlitField& b, const CompleteField& sigma,
                                             double kappa, double mu) {
  if (sigma.sigma_m1 == 0.0) {
    throw std::invalid_argument("normalize_stochastic: sigma[-1] must be nonzero");
  }
  if (kappa < 0.0) throw std::invalid_argument("normalize_stochastic: kappa must be >= 0");

  StochasticNormalization out{b, sigma, kappa, mu, {}};

  // V_{1/sigma_{-1}}: u -> sigma_{-1} u, so sqrt(kappa) -> sigma_{-1} sqrt(kappa)
  // and the drift slope scales the same way.
  const ElementaryTransform v{TransformKind::V, 1.0 / out.sigma.sigma_m1};
  out.kappa *= out.sigma.sigma_m1 * out.sigma.sigma_m1;
  out.mu *= 1.0 / v.c;
  apply_to_coefficients(v, out.b, out.sigma);
  out.applied.push_back(v);

  // T_{2/b_{-2}}: u_t -> u_{ct}; Brownian scaling gives kappa -> c kappa,
  // the drift slope scales by c.
  const ElementaryTransform t{TransformKind::T, 2.0 / out.b.b_m2};
  out.kappa *= t.c;
  out.mu *= t.c;
  apply_to_coefficients(t, out.b, out.sigma);
  out.applied.push_back(t);

  // D_c adds c to the drift slope.
  const double c_d =
      (1.5 * out.b.b_m2 * out.sigma.sigma_0 - out.b.b_m1) / out.sigma.sigma_m1;
  const ElementaryTransform d{TransformKind::D, c_d};
  out.mu += c_d;
  apply_to_coefficients(d, out.b, out.sigma);
  out.applied.push_back(d);

  return out;
}

}  // namespace slitflow::transforms
