#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mloop/multiloop.hpp"

namespace mloop {

/// Declarative run configuration. Parsed from a single JSON file with a
/// versioned schema; unknown keys are rejected with their paths.
struct RunConfig {
  int schema_version = 1;

  // algebra selection: either a named preset, or the explicit tuple
  std::string preset;                                 // multiloop preset name
  std::string algebra;                                // algebra preset name ("sl2", "sl3", ...)
  std::vector<std::vector<std::vector<std::string>>> structure_constants; // explicit algebra
  size_t n = 1;
  std::vector<unsigned> r;

  struct AutomorphismSpec {
    std::string kind;                            // identity | neg_transpose | diag_conj | matrix
    unsigned order = 1;                          // diag_conj root-of-unity order q
    std::vector<long> exponents;                 // diag_conj exponents
    std::vector<std::vector<std::string>> matrix; // explicit matrix entries
  };
  std::vector<AutomorphismSpec> automorphisms;

  // command parameters
  std::vector<Multidegree> weights;
  int cutoff = 3;
  int degree_cap = 64;
  int trials = 500;

  struct DensityParams {
    std::string function = "exp-sin";
    std::vector<int> orders{4, 8, 16, 32, 64};
    int k = 2;
  } density;

  struct WeierstrassParams {
    std::string function = "exp";
    int mu = 2;
    std::vector<int> orders{16, 32, 64};
  } weierstrass;

  /// Parses and validates; throws ConfigError with the offending key path.
  static RunConfig from_json(const nlohmann::json &j);
  static RunConfig from_file(const std::string &path);

  /// Effective configuration with defaults expanded, for report echoing.
  nlohmann::ordered_json echo() const;

  /// Builds the configured multiloop algebra (preset or explicit tuple).
  MultiloopPtr build() const;
};

} // namespace mloop
