#ifndef ILSOLVE_INSTANCE_GEN_HPP_
#define ILSOLVE_INSTANCE_GEN_HPP_

#include <optional>

#include "ilsolve/model.hpp"
#include "ilsolve/rng.hpp"

namespace ilsolve {

/// Family of small random instances used by the verification suites and
/// tests. Coefficients, bounds and right-hand sides are integral, so exact
/// and tolerance-based feasibility agree on these instances.
struct GenConfig {
  int min_vars = 2, max_vars = 6;
  int min_rows = 1, max_rows = 8;
  Value bound_abs = 5;       // bounds drawn within [-bound_abs, bound_abs]
  int coeff_abs = 5;         // nonzero coefficients in [-coeff_abs, coeff_abs]
  int max_terms = 4;         // per row, also capped by the variable count
  Value slack_max = 5;       // anchor slack; 0 makes a row tight
  bool binary = false;       // all domains {0,1}
  bool force_feasible = true;  // rhs built around a random anchor point
  std::uint64_t box_budget = 200'000;  // cap on the domain product
  bool nonzero_objective = true;
};

struct GenResult {
  Instance inst;
  // The anchor point when force_feasible is set; feasible by construction.
  std::optional<Assignment> anchor;
};

GenResult random_instance(const GenConfig& cfg, Rng& rng);

}  // namespace ilsolve

#endif  // ILSOLVE_INSTANCE_GEN_HPP_
