#pragma once

#include <string>
#include <vector>

#include "stalab/oracle.hpp"

namespace stalab {

/// Deliberate defects for checking that the suite notices them.
enum class Mutation {
  None,
  LaserSignFlip,  ///< arm b's laser phase added instead of subtracted
};

struct ValidationOptions {
  std::string filter;  ///< run only cases whose id contains this substring
  Mutation mutation = Mutation::None;
  OracleConfig oracle;
};

struct ValidationResult {
  std::vector<OracleReport> reports;

  std::size_t failures() const;
  bool all_pass() const { return failures() == 0; }
};

/// Golden-formula and oracle-equivalence checks over the catalog and random sequences.
ValidationResult run_validation(const ValidationOptions& options = {});

/// Names of every case, in run order.
std::vector<std::string> validation_case_ids();

/// Report blocks followed by a `summary` line.
std::string to_text(const ValidationResult& result);

}  // namespace stalab
