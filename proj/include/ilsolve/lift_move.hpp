#ifndef ILSOLVE_LIFT_MOVE_HPP_
#define ILSOLVE_LIFT_MOVE_HPP_

#include <optional>
#include <span>

#include "ilsolve/model.hpp"

namespace ilsolve {

/// Contiguous integer range with sentinel-infinite ends.
struct IntegerInterval {
  Value lo = kNegInf;
  Value hi = kPosInf;

  bool contains(Value v) const {
    return (is_neg_inf(lo) || v >= lo) && (is_pos_inf(hi) || v <= hi);
  }
  bool empty() const {
    return is_finite(lo) && is_finite(hi) && lo > hi;
  }
};

/// Values of variable j that keep row i satisfied with all other variables
/// fixed at a. Requires A_ij != 0 and row i satisfied at a; slack within
/// kFeasEps of zero is treated as zero so the current value always qualifies.
/// One-sided: [alpha_j + ceil(slack/A_ij), +inf) for A_ij < 0, and
/// (-inf, alpha_j + floor(slack/A_ij)] for A_ij > 0.
IntegerInterval ldc_interval(double slk, double coeff, Value alpha);
IntegerInterval ldc(const Instance& inst, int j, int i, const Assignment& a);

/// Feasible values for variable j at a: the intersection of ldc over every
/// row containing j and the variable's global bounds. Contains a[j] whenever
/// a is feasible.
IntegerInterval lfd(const Instance& inst, int j, const Assignment& a);
IntegerInterval lfd(const Instance& inst, int j, const Assignment& a,
                    std::span<const double> activities);

/// Set op.var to the end of its feasible domain that the objective rewards.
struct LmOperation {
  int var = -1;
  Value old_value = 0;
  Value new_value = 0;
};

/// The end of lfd(j) selected by the objective sign: hi for obj[j] < 0,
/// lo for obj[j] > 0. Absent when obj[j] == 0 or that end is infinite.
/// May equal a[j].
std::optional<Value> lm_target(const Instance& inst, int j, const Assignment& a,
                               std::span<const double> activities);

/// lm_target wrapped as a move; additionally absent when the target equals
/// the current value.
std::optional<LmOperation> lm_candidate(const Instance& inst, int j,
                                        const Assignment& a);
std::optional<LmOperation> lm_candidate(const Instance& inst, int j,
                                        const Assignment& a,
                                        std::span<const double> activities);

/// Objective decrease achieved by op: obj(a) - obj(a after op).
double score_lm(const Instance& inst, const LmOperation& op);

}  // namespace ilsolve

#endif  // ILSOLVE_LIFT_MOVE_HPP_
