#pragma once

// Cross-checks of every closed-form result against exact propagation and
// generic Wootters concurrence.

#include <optional>
#include <string>
#include <vector>

#include "sqbath/model.hpp"
#include "table.hpp"

namespace sqbath::cli {

struct ValidationOptions {
  std::optional<double> n_bar;          // restrict to one bath
  std::optional<InitialKind> initial;   // restrict to one initial state
};

struct ValidationRow {
  std::string check;
  std::string scope;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool gated = true;  // general-solution entries are reported, never gated
  bool within = true;
};

inline constexpr double kClosedFormTolerance = 1e-9;

std::vector<ValidationRow> run_validation(const ValidationOptions& options = {});

/// Columns check, scope, max_deviation, tolerance, status; status is
/// pass/fail for gated checks and verified/deviates for general-solution entries.
Table validation_table(const std::vector<ValidationRow>& rows);

bool all_gated_pass(const std::vector<ValidationRow>& rows);

}  // namespace sqbath::cli
