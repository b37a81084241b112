#pragma once

// Declarative problem files: {"kind": ..., "parameters": {...}, "output": path}.
//
// Parameters are validated completely before any computation. Malformed
// problems throw InputError; failures inside the numerical modules propagate
// unchanged.

#include "orbitframes/io.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace orbitframes {

struct RunOptions {
  /// Rank cut for kernels and the generator closure, period detection.
  double tol = 1e-10;
  /// Seeds the random test vectors some kinds draw.
  std::uint64_t seed = 0;
  int max_trunc = 16384;
};

struct CsvFile {
  /// Suffix appended to the report stem, e.g. "decay".
  std::string name;
  std::string content;
};

struct RunResult {
  io::Json report;
  std::vector<CsvFile> csv;
  /// The problem's "output" field, if present.
  std::optional<std::string> output;
};

/// carleson, model_space, orbit_analysis, normal_construction, perturbation,
/// biinfinite, translates.
const std::vector<std::string>& problem_kinds();

RunResult run_problem(const io::Json& problem, const RunOptions& options = {});

}  // namespace orbitframes
