#pragma once

// Acceptance suite shared by the `verify` subcommand and the acceptance test.
// Each criterion reports pass/fail together with the measured values.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ballneedlets/io.hpp"

namespace ballneedlets {

/// Shared run settings; the config file and command-line flags override the defaults.
struct RunConfig {
  double mu = 1.0;  ///< weight parameter for the single-mu criteria and subcommand default
  int d = 2;        ///< subcommand default; the criteria fix d = 2
  std::uint64_t seed = 20240611;
  int n = 8;                ///< subcommand default degree
  int J = 4;                ///< subcommand default frame depth
  std::string cutoff = "a";
  std::string output;  ///< subcommand artifact path ("" = stdout)

  double tol_jacobi = 1e-10;
  double tol_kernel = 1e-8;
  double tol_reproduction = 1e-8;
  double tol_exactness = 1e-8;
  double tol_parseval = 1e-8;
  double tol_reconstruction = 1e-8;
  double tol_metric = 1e-12;

  double localization_growth = 2.0;  ///< allowed ratio(64) / ratio(16)
  double decay_growth = 2.0;         ///< allowed ratio(j) / ratio(3), j = 4, 5
  double drift = 0.25;               ///< allowed relative drift of monitored constants
  double endpoint_ratio = 1e3;       ///< upper / lower weight ratio bound
  double norm_lo = 0.05;
  double norm_hi = 20.0;

  int polynomials = 50;  ///< random polynomials per mu in the tight-frame check
  int frame_levels = 6;
  std::string report;  ///< optional JSON report path
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// key = value lines, '#' comments; unknown keys and malformed values throw ConfigError.
RunConfig parse_config(const std::string& text, RunConfig base = {});
void validate(const RunConfig& cfg);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string summary;
  Json measured;
  double seconds = 0.0;
};

/// jacobi, kernel, reproduction, localization, cubature, partition, parseval,
/// decay, metric, christoffel (criteria 1-10 in this order).
const std::vector<std::string>& criterion_names();

/// Runs the selected criteria (all when `only` is empty); unknown names throw ConfigError.
/// `on_result` is called as each criterion finishes.
std::vector<CriterionResult> run_acceptance(const RunConfig& cfg,
                                            const std::vector<std::string>& only = {},
                                            void (*on_result)(const CriterionResult&) = nullptr);

/// Without the timing, so reports are reproducible.
Json to_json(const CriterionResult& r);
std::string format_line(const CriterionResult& r);

}  // namespace ballneedlets
