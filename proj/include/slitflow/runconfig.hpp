#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "slitflow/chain.hpp"
#include "slitflow/stochastic.hpp"

namespace slitflow::cli {

using nlohmann::json;

struct DriverConfig {
  std::string type = "brownian";  // brownian | constant0 | linear | sqrt | tangent_angle
  double kappa = 0.0;
  double mu = 0.0;     // linear slope
  double c = 0.0;      // sqrt coefficient
  double theta = 0.0;  // tangent angle, in (0, pi)
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  double dt = 1e-3;
};

struct GridConfig {
  std::string kind = "disk";  // disk (polar grid) | rect
  std::size_t n = 50;         // total points for disk grids
  double radius = 0.9;
  double re0 = -2.0, re1 = 2.0, im0 = 0.25, im1 = 2.0;  // rect bounds
  std::size_t nx = 10, ny = 5;
};

/// One experiment description; validated against the chain invariants
/// before any computation runs.
struct RunConfig {
  conformal::CanonicalDomain domain = conformal::CanonicalDomain::Disk;
  std::optional<std::string> preset;  // overrides b/sigma when present
  std::array<double, 4> b{2.0, 0.0, 0.0, 0.0};
  std::array<double, 3> sigma{1.0, 0.0, 0.0};
  DriverConfig driver;
  double T = 1.0;
  double trace_epsilon = 1e-3;
  GridConfig grid;
  std::string output = "out";
  unsigned threads = 0;

  static RunConfig from_json(const json& j);
  json to_json() const;
  static RunConfig load(const std::string& path);

  fields::SlitField slit_field() const;
  fields::CompleteField complete_field() const;
  driving::DrivingPath make_driver() const;
  chain::ChainSpec make_chain_spec() const;
  std::vector<Complex> make_grid() const;
};

bool operator==(const DriverConfig&, const DriverConfig&);
bool operator==(const GridConfig&, const GridConfig&);
bool operator==(const RunConfig&, const RunConfig&);

/// Stable process exit codes: 0 success, 2 invalid configuration, 3
/// numerical failure (every point exploded before any output).
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

}  // namespace slitflow::cli
