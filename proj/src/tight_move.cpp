#include "ilsolve/tight_move.hpp"

#include <algorithm>
#include <cmath>

#include "ilsolve/numeric.hpp"

namespace ilsolve {

WeightState WeightState::make(int num_cons, double sp) {
  WeightState w;
  w.con.assign(num_cons, 1);
  w.obj = 1;
  w.ul_con = std::max(1000, num_cons);
  w.ul_obj = w.ul_con / 10;
  w.sp_ppm = (int)std::llround(sp * 1e6);
  return w;
}

namespace {

Value clamp_steps(double steps_d, Value room) {
  if (steps_d <= 0.0) return 0;
  if (steps_d > 9.0e17) steps_d = 9.0e17;
  Value s = (Value)steps_d;
  if (!is_pos_inf(room) && s > room) s = room;
  return s;
}

double find_coeff(const Instance& inst, int j, int i) {
  for (const Term& t : inst.rows[i].terms)
    if (t.var == j) return t.coeff;
  return 0.0;
}

}  // namespace

Value tm_shift_target(double slk, double coeff, Value alpha, Value lo, Value hi) {
  double ratio = slk / coeff;
  if (slk < 0.0) {
    if (coeff < 0.0) {
      // ratio > 0; the smallest increase that satisfies the row.
      Value room = is_pos_inf(hi) ? kPosInf : hi - alpha;
      return alpha + clamp_steps(snapped_ceil(ratio), room);
    }
    // ratio < 0; the smallest decrease that satisfies the row.
    Value room = is_neg_inf(lo) ? kPosInf : alpha - lo;
    return alpha - clamp_steps(-snapped_floor(ratio), room);
  }
  if (coeff < 0.0) {
    // ratio <= 0; decrease toward tightness.
    Value room = is_neg_inf(lo) ? kPosInf : alpha - lo;
    return alpha - clamp_steps(-snapped_ceil(ratio), room);
  }
  // ratio >= 0; increase toward tightness.
  Value room = is_pos_inf(hi) ? kPosInf : hi - alpha;
  return alpha + clamp_steps(snapped_floor(ratio), room);
}

std::optional<TmOperation> tm_candidate(const Instance& inst, int j, int i,
                                        const Assignment& a, double slack_i) {
  double coeff = find_coeff(inst, j, i);
  if (coeff == 0.0) return std::nullopt;
  Value target = tm_shift_target(slack_i, coeff, a[j], inst.lower[j], inst.upper[j]);
  if (target == a[j]) return std::nullopt;
  return TmOperation{j, i, a[j], target};
}

std::optional<TmOperation> tm_candidate(const Instance& inst, int j, int i,
                                        const Assignment& a) {
  return tm_candidate(inst, j, i, a, slack(inst, i, a));
}

double score_reduce(const Instance& inst, const TmOperation& op,
                    const WeightState& w, double beta,
                    std::span<const double> activities) {
  double delta = (double)(op.new_value - op.old_value);
  double sc = 0.0;
  for (const ColEntry& e : inst.cols[op.var]) {
    double before = activities[e.row];
    double after = before + e.coeff * delta;
    bool sat_before = row_satisfied(inst, e.row, before);
    bool sat_after = row_satisfied(inst, e.row, after);
    double wi = (double)w.con[e.row];
    if (sat_before) {
      if (!sat_after) sc -= wi;
    } else if (sat_after) {
      sc += wi;
    } else if (after < before) {
      sc += beta * wi;
    } else if (after > before) {
      sc -= beta * wi;
    }
  }
  return sc;
}

double score_reduce(const Instance& inst, const Assignment& a,
                    const TmOperation& op, const WeightState& w, double beta) {
  return score_reduce(inst, op, w, beta, compute_activities(inst, a));
}

double score_improve(const Instance& inst, const TmOperation& op,
                     const WeightState& w, bool objective_active,
                     double current_obj, double best_obj) {
  if (!objective_active) return 0.0;
  double after =
      current_obj + inst.obj[op.var] * (double)(op.new_value - op.old_value);
  return after < best_obj ? (double)w.obj : -(double)w.obj;
}

double score_tm(const Instance& inst, const TmOperation& op,
                const WeightState& w, double beta, bool objective_active,
                double current_obj, double best_obj,
                std::span<const double> activities) {
  return score_reduce(inst, op, w, beta, activities) +
         score_improve(inst, op, w, objective_active, current_obj, best_obj);
}

double score_tm(const Instance& inst, const Assignment& a,
                const TmOperation& op, const WeightState& w, double beta,
                bool objective_active, double best_obj) {
  return score_tm(inst, op, w, beta, objective_active,
                  evaluate_objective(inst, a), best_obj,
                  compute_activities(inst, a));
}

void update_weights(const Instance& inst, std::span<const double> activities,
                    double current_obj, WeightState& w, double best_obj,
                    bool feasible_ever, Rng& rng) {
  bool smooth = chance_ppm(rng, w.sp_ppm);
  if (!smooth) {
    for (int i = 0; i < inst.num_cons; ++i)
      if (!row_satisfied(inst, i, activities[i]) && w.con[i] < w.ul_con)
        ++w.con[i];
    if (feasible_ever && current_obj >= best_obj && w.obj < w.ul_obj) ++w.obj;
  } else {
    for (int i = 0; i < inst.num_cons; ++i)
      if (row_satisfied(inst, i, activities[i]) && w.con[i] > 1) --w.con[i];
    if (feasible_ever && current_obj < best_obj && w.obj > 1) --w.obj;
  }
}

void update_weights(const Instance& inst, const Assignment& a, WeightState& w,
                    double best_obj, bool feasible_ever, Rng& rng) {
  update_weights(inst, compute_activities(inst, a),
                 evaluate_objective(inst, a), w, best_obj, feasible_ever, rng);
}

}  // namespace ilsolve
