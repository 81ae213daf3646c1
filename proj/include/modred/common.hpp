#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace modred {

// Raised when an input fails structural validation (malformed category,
// non-functorial diagram, unknown selector, ...). CLI maps this to exit 2.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a check that is supposed to pass by a verified theorem fails,
// i.e. an internal inconsistency (characterization mismatch, broken witness).
struct HardError : std::runtime_error {
  explicit HardError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when an enumeration or search exceeds its configured budget.
// Distinct from "searched everything and found nothing". CLI exit 3.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// Enumeration budgets. All enumerations run in a canonical deterministic
// order and stop with BudgetExceeded when a cap would be crossed; results
// never depend on wall-clock or address ordering.
struct Budget {
  int max_set_card = 3;        // finite sets: largest cardinality enumerated
  int max_chain_dim = 2;       // chain complexes: largest dimension per degree
  int max_chain_degree = 2;    // chain complexes: largest degree with support
  long max_hom_size = 200000;  // largest hom-set enumeration
  int max_hom_space_dim = 17;  // chain complexes: largest hom-space F_p-dimension
  long max_objects = 4096;     // largest object enumeration
  long max_diagrams = 4096;    // diagram enumeration cap
  long max_maps = 4096;        // diagram-map enumeration cap
  long max_tuples = 2000000;   // limit-evaluator tuple scan cap
  long max_search = 2000000;   // lift/inverse search cap

  static Budget quick();
  static Budget desk();
  static Budget thorough();
  // Reads MODRED_BUDGET_PROFILE (quick|desk|thorough), defaulting to desk.
  static Budget from_env();
};

// Join a container of strings for error messages and canonical ids.
std::string join(const std::vector<std::string>& parts, const std::string& sep);

}  // namespace modred
