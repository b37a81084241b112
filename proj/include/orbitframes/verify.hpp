#pragma once

// Acceptance battery: eleven numbered checks, each reporting the measured
// value against its threshold. Failures are reported, never thrown.

#include "orbitframes/model_space.hpp"

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace orbitframes {

enum class VerifyLevel { Quick, Full };

/// Model-space projection under test in criterion 3.
using Projector = std::function<CoeffVecd(const ModelSpace&, const CoeffVecd&)>;

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::Quick;
  std::uint64_t seed = 1;
  Projector projector = project_model;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string measured;
  std::string threshold;
  double seconds = 0.0;
  /// Runtime limit in seconds, 0 when the criterion has none.
  double time_limit = 0.0;
};

struct CertificateRow {
  int J = 0;
  double delta = 0.0;
  double Delta = 0.0;
  double certificate_lower = 0.0;
  double measured_lower = 0.0;
  double measured_upper = 0.0;
  double certificate_upper = 0.0;
  bool contained = false;
};

struct VerifyReport {
  std::vector<CriterionResult> criteria;
  /// Filled at the full level only.
  std::vector<CertificateRow> certificate_table;

  bool all_passed() const;
};

VerifyReport run_verify(const VerifyOptions& options = {});

/// One line per criterion, then the certificate table if present.
void print_report(std::ostream& os, const VerifyReport& report);

}  // namespace orbitframes
