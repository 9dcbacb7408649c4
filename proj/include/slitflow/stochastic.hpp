#pragma once

#include <utility>
#include <vector>

#include "slitflow/chain.hpp"

namespace slitflow::stochastic {

using conformal::CanonicalDomain;
using fields::CompleteField;
using fields::SlitField;

enum class SdeScheme { EulerIto, StratonovichHeun };

struct SdeConfig {
  double kappa = 0.0;
  double dt = 1e-3;
  SdeScheme scheme = SdeScheme::StratonovichHeun;
  driving::RandomSeed seed;
  double epsilon_blowup = 1e-6;
  double pole_step_factor = 0.5;
  unsigned threads = 0;
};

/// The classical driving-field pairs plus the two mixed examples.
enum class Preset { Chordal, Radial, Dipolar, ABP, RadialB_ChordalSigma };

const char* preset_name(Preset p);
Preset preset_from_name(const std::string& name);
/// Natural domain of the preset's printed closed forms (chordal: half-plane,
/// radial/ABP/mixed: disk, dipolar: strip).
CanonicalDomain preset_default_domain(Preset p);

/// Coefficient pairs of the preset in the requested domain (coefficients are
/// domain-invariant; only the evaluation domain changes).
std::pair<SlitField, CompleteField> preset_fields(Preset p, CanonicalDomain domain);

/// Ito-form drift of the flow: z -> -b(z) + (kappa/2) sigma(z) sigma'(z).
fields::FieldFn ito_drift(const SlitField& b, const CompleteField& sigma, double kappa);

/// Per-point trajectories of the stochastic flow, sampled on the driver grid.
struct SdePathSet {
  std::vector<double> times;
  std::vector<std::vector<Complex>> values;  // [point][time index]
  std::vector<char> alive;
  std::vector<double> explosion_time;
  driving::DrivingPath driver;  // u_t = sqrt(kappa) B_t actually used
};

/// Direct simulation of dG = -b(G) dt + sqrt(kappa) sigma(G) o dB with the
/// configured scheme.  The Brownian increments come from the same seeded
/// path generator as driving::brownian_path, so chain runs with a matching
/// seed are pathwise comparable.  Near the pole of b the step is subdivided
/// proportionally to the distance; sub-step noise is read off the linear
/// interpolant of the stored path.
SdePathSet simulate_flow(const SlitField& b, const CompleteField& sigma, const SdeConfig& config,
                         std::span<const Complex> points, double T);

/// Same, but driven by an externally supplied path (u = sqrt(kappa) B).
SdePathSet simulate_flow_with_driver(const SlitField& b, const CompleteField& sigma,
                                     const SdeConfig& config, const driving::DrivingPath& driver,
                                     std::span<const Complex> points, double T);

struct CompositionReport {
  double max_discrepancy = 0.0;  // sup over sampled (t, z), both alive
  std::size_t compared = 0;
};

/// Pathwise check of the flow identity G_t = h_{u_t} o g_t: simulates the
/// SDE and the chain off one shared driver and reports the sup discrepancy.
CompositionReport composition_check(const SlitField& b, const CompleteField& sigma,
                                    const SdeConfig& config, std::span<const Complex> points,
                                    double T, std::size_t sample_stride = 50);

}  // namespace slitflow::stochastic
