#ifndef ILSOLVE_MODEL_HPP_
#define ILSOLVE_MODEL_HPP_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace ilsolve {

/// Integer variable values. Infinite bounds use the extreme representable
/// values as sentinels; arithmetic on bounds must check is_neg_inf/is_pos_inf
/// before forming differences.
using Value = std::int64_t;

inline constexpr Value kNegInf = std::numeric_limits<Value>::min();
inline constexpr Value kPosInf = std::numeric_limits<Value>::max();

inline constexpr bool is_neg_inf(Value v) { return v == kNegInf; }
inline constexpr bool is_pos_inf(Value v) { return v == kPosInf; }
inline constexpr bool is_finite(Value v) { return v != kNegInf && v != kPosInf; }

/// Absolute slack tolerance: a row is satisfied iff b - A.x >= -kFeasEps.
inline constexpr double kFeasEps = 1e-6;

struct Term {
  int var;
  double coeff;  // nonzero
};

/// One row in A.x <= b form.
struct Constraint {
  std::vector<Term> terms;  // var indices strictly increasing, nonempty
  double rhs = 0.0;
};

struct ColEntry {
  int row;
  double coeff;
};

/// A full assignment of values to variables, indexed by variable.
using Assignment = std::vector<Value>;

/// An integer linear program in normalized form: minimize c.x subject to
/// A.x <= b and lower <= x <= upper, x integer. Instances arriving in
/// maximization sense are stored negated; reported_objective() maps internal
/// objective values back to the original sense.
struct Instance {
  int num_vars = 0;
  int num_cons = 0;

  std::vector<double> obj;      // dense c, size num_vars
  std::vector<int> obj_support; // indices j with obj[j] != 0, increasing

  std::vector<Constraint> rows;
  std::vector<std::vector<ColEntry>> cols;  // exact transpose of rows

  std::vector<Value> lower, upper;  // sentinel-infinite allowed

  std::vector<std::string> var_names;
  std::vector<std::string> con_names;

  bool maximize = false;      // sense of the original formulation
  double obj_constant = 0.0;  // additive constant in the original sense

  /// Rebuilds obj_support and cols from obj/rows and checks the structural
  /// invariants (term ordering, nonzero coefficients, lower <= upper).
  /// Throws std::logic_error on violation.
  void finalize();

  double reported_objective(double internal) const {
    return (maximize ? -internal : internal) + obj_constant;
  }
};

double evaluate_objective(const Instance& inst, const Assignment& a);

/// Slack of row i at a: rows[i].rhs - A_i.a. Negative means violated.
double slack(const Instance& inst, int i, const Assignment& a);

/// All row activities A_i.a, computed from scratch.
std::vector<double> compute_activities(const Instance& inst, const Assignment& a);

inline bool row_satisfied(const Instance& inst, int i, double activity) {
  return inst.rows[i].rhs - activity >= -kFeasEps;
}

bool within_bounds(const Instance& inst, const Assignment& a);

/// True iff every row is satisfied within kFeasEps and a is within bounds.
bool is_feasible(const Instance& inst, const Assignment& a);

/// Indices of violated rows, ascending. Computed from scratch; the search
/// engine maintains its own incremental copy of this set.
std::vector<int> violated_rows(const Instance& inst, const Assignment& a);

}  // namespace ilsolve

#endif  // ILSOLVE_MODEL_HPP_
