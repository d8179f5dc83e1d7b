#ifndef ILSOLVE_BOUNDARY_HPP_
#define ILSOLVE_BOUNDARY_HPP_

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ilsolve/instance_gen.hpp"
#include "ilsolve/model.hpp"
#include "ilsolve/rng.hpp"

namespace ilsolve {

class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// Finite enumeration region, one closed interval per variable.
struct Box {
  std::vector<Value> lo, hi;

  static Box of_bounds(const Instance& inst);
  double size() const;
};

/// Exact membership in the feasible region: every row satisfied with slack
/// >= 0 and all global bounds respected. No tolerance; oracle instances carry
/// integral data, where this coincides with the engine's epsilon test.
bool in_polytope(const Instance& inst, const Assignment& a);

/// Every integer point of the box that is feasible, in odometer order.
/// Throws BudgetError when the box holds more than 1e7 points.
std::vector<Assignment> enumerate_feasible(const Instance& inst, const Box& box);

/// Feasible with at least one infeasible unit neighbor (global bounds count
/// as part of the region).
bool is_boundary(const Instance& inst, const Assignment& a);

struct CheckResult {
  enum class Status { pass, fail, skipped };
  Status status = Status::pass;
  std::string name;
  int draws = 0;       // units actually checked
  int skipped = 0;     // draws skipped (no target, empty set, constant objective)
  int violations = 0;  // failing draws; detail keeps the first witness
  std::string detail;  // counterexample description when status == fail

  bool ok() const { return status != Status::fail; }
};

/// Optima are boundary: enumerates the feasible set, requires every minimizer
/// to be a boundary point and the minimum over boundary points to equal the
/// overall minimum. Skips instances with an empty feasible set or an
/// objective constant on it.
CheckResult check_prop1(const Instance& inst, const Box& box);
CheckResult check_prop1_family(const GenConfig& cfg, int instances, Rng& rng);

/// Pluggable move computation for mutation tests: (inst, j, i, a) -> value.
using TmValueFn =
    std::function<Value(const Instance&, int, int, const Assignment&)>;

/// The move value a tight move assigns, including the no-op case.
Value tm_apply_value(const Instance& inst, int j, int i, const Assignment& a);

/// Feasible tight-move results are boundary: random (x, j, i) draws with
/// A_ij != 0, x within bounds; whenever the moved point lands in the region
/// it must be a boundary point.
CheckResult check_prop2(const GenConfig& cfg, int draws, Rng& rng,
                        const TmValueFn& tm = {});

/// Lift-move results are boundary: random feasible x and objective variable j
/// with a finite lift target; the moved point must stay feasible and be a
/// boundary point.
CheckResult check_prop3(const GenConfig& cfg, int draws, Rng& rng);

/// Every feasible assignment an engine run visits (as the result of an
/// applied operation) is boundary. Runs instrumented searches on random
/// instances.
CheckResult check_prop4(const GenConfig& cfg, int runs, std::uint64_t steps,
                        Rng& rng);

struct FactsResult {
  CheckResult fact1, fact2, fact3, fact4;

  bool ok() const {
    return fact1.ok() && fact2.ok() && fact3.ok() && fact4.ok();
  }
};

/// Structural facts about feasible sets, each on its own sampler:
///   1. points between two collinear feasible points are feasible;
///   2. the objective is monotone between them;
///   3. a boundary point is optimal for an objective built from one of its
///      blocked unit directions (checked within the enumerated set);
///   4. on binary instances every feasible point is boundary.
FactsResult check_facts(const GenConfig& general, const GenConfig& binary,
                        int draws, Rng& rng);

std::string describe_instance(const Instance& inst);
std::string describe_point(const Assignment& a);

}  // namespace ilsolve

#endif  // ILSOLVE_BOUNDARY_HPP_
