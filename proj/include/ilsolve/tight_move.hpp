#ifndef ILSOLVE_TIGHT_MOVE_HPP_
#define ILSOLVE_TIGHT_MOVE_HPP_

#include <optional>
#include <span>

#include "ilsolve/model.hpp"
#include "ilsolve/rng.hpp"

namespace ilsolve {

/// A single-variable move derived from one row: set op.var to new_value.
struct TmOperation {
  int var = -1;
  int row = -1;
  Value old_value = 0;
  Value new_value = 0;

  bool increases() const { return new_value > old_value; }
};

/// Dynamic constraint and objective weights with their probabilistic update
/// scheme. Weights stay in [1, ul_con] (constraints) and [1, ul_obj]
/// (objective).
struct WeightState {
  std::vector<int> con;
  int obj = 1;
  int ul_con = 1000;
  int ul_obj = 100;
  int sp_ppm = 300;  // smoothing probability, parts per million

  static WeightState make(int num_cons, double sp = 0.0003);
};

/// Target value for a variable with coefficient `coeff` in a row with slack
/// `slk`: the move that makes the row as tight as possible while (for slk < 0)
/// satisfying it, clamped to the variable's bound. May equal `alpha` when no
/// progress is possible in the prescribed direction.
Value tm_shift_target(double slk, double coeff, Value alpha, Value lo, Value hi);

/// The move for (var j, row i) when it changes the assignment; absent when the
/// clamped step is zero. Requires A_ij != 0.
std::optional<TmOperation> tm_candidate(const Instance& inst, int j, int i,
                                        const Assignment& a);
std::optional<TmOperation> tm_candidate(const Instance& inst, int j, int i,
                                        const Assignment& a, double slack_i);

/// Weighted constraint-satisfaction score of applying op: +w for each row
/// turned satisfied, -w for each turned violated, +/- beta*w for violated rows
/// whose activity moves down/up, 0 otherwise.
double score_reduce(const Instance& inst, const TmOperation& op,
                    const WeightState& w, double beta,
                    std::span<const double> activities);
double score_reduce(const Instance& inst, const Assignment& a,
                    const TmOperation& op, const WeightState& w, double beta);

/// Objective contribution to the move score. Inactive (0) before any feasible
/// solution exists; otherwise +w(obj) when the post-move objective beats
/// best_obj and -w(obj) when it does not.
double score_improve(const Instance& inst, const TmOperation& op,
                     const WeightState& w, bool objective_active,
                     double current_obj, double best_obj);

double score_tm(const Instance& inst, const TmOperation& op,
                const WeightState& w, double beta, bool objective_active,
                double current_obj, double best_obj,
                std::span<const double> activities);
double score_tm(const Instance& inst, const Assignment& a,
                const TmOperation& op, const WeightState& w, double beta,
                bool objective_active, double best_obj);

/// One probabilistic weight update at a local optimum. A single draw selects
/// the branch: with probability 1-sp violated rows (and, once a feasible
/// solution is known, a non-improving objective) gain weight; with
/// probability sp satisfied rows (and an improving objective) shed it.
void update_weights(const Instance& inst, std::span<const double> activities,
                    double current_obj, WeightState& w, double best_obj,
                    bool feasible_ever, Rng& rng);
void update_weights(const Instance& inst, const Assignment& a, WeightState& w,
                    double best_obj, bool feasible_ever, Rng& rng);

}  // namespace ilsolve

#endif  // ILSOLVE_TIGHT_MOVE_HPP_
