#include "ilsolve/lift_move.hpp"

#include "ilsolve/numeric.hpp"

namespace ilsolve {

IntegerInterval ldc_interval(double slk, double coeff, Value alpha) {
  if (slk < 0.0 && slk >= -kFeasEps) slk = 0.0;
  double ratio = slk / coeff;
  if (coeff < 0.0) {
    Value off = ratio_to_value(snapped_ceil(ratio));  // <= 0 when slk >= 0
    return {is_finite(off) ? alpha + off : kNegInf, kPosInf};
  }
  Value off = ratio_to_value(snapped_floor(ratio));  // >= 0 when slk >= 0
  return {kNegInf, is_finite(off) ? alpha + off : kPosInf};
}

IntegerInterval ldc(const Instance& inst, int j, int i, const Assignment& a) {
  double coeff = 0.0;
  for (const Term& t : inst.rows[i].terms)
    if (t.var == j) coeff = t.coeff;
  return ldc_interval(slack(inst, i, a), coeff, a[j]);
}

IntegerInterval lfd(const Instance& inst, int j, const Assignment& a,
                    std::span<const double> activities) {
  // Sentinels are the extreme representable values, so plain min/max
  // intersects correctly.
  IntegerInterval dom{inst.lower[j], inst.upper[j]};
  for (const ColEntry& e : inst.cols[j]) {
    IntegerInterval c =
        ldc_interval(inst.rows[e.row].rhs - activities[e.row], e.coeff, a[j]);
    if (c.lo > dom.lo) dom.lo = c.lo;
    if (c.hi < dom.hi) dom.hi = c.hi;
  }
  return dom;
}

IntegerInterval lfd(const Instance& inst, int j, const Assignment& a) {
  return lfd(inst, j, a, compute_activities(inst, a));
}

std::optional<Value> lm_target(const Instance& inst, int j, const Assignment& a,
                               std::span<const double> activities) {
  double cj = inst.obj[j];
  if (cj == 0.0) return std::nullopt;
  IntegerInterval dom = lfd(inst, j, a, activities);
  Value target = cj < 0.0 ? dom.hi : dom.lo;
  if (!is_finite(target)) return std::nullopt;
  return target;
}

std::optional<LmOperation> lm_candidate(const Instance& inst, int j,
                                        const Assignment& a,
                                        std::span<const double> activities) {
  std::optional<Value> target = lm_target(inst, j, a, activities);
  if (!target || *target == a[j]) return std::nullopt;
  return LmOperation{j, a[j], *target};
}

std::optional<LmOperation> lm_candidate(const Instance& inst, int j,
                                        const Assignment& a) {
  return lm_candidate(inst, j, a, compute_activities(inst, a));
}

double score_lm(const Instance& inst, const LmOperation& op) {
  return inst.obj[op.var] * (double)(op.old_value - op.new_value);
}

}  // namespace ilsolve
