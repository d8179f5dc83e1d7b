#ifndef ILSOLVE_ENGINE_HPP_
#define ILSOLVE_ENGINE_HPP_

#include <chrono>
#include <functional>
#include <optional>

#include "ilsolve/lift_move.hpp"
#include "ilsolve/metrics.hpp"
#include "ilsolve/model.hpp"
#include "ilsolve/rng.hpp"
#include "ilsolve/tight_move.hpp"

namespace ilsolve {

/// Search: no feasible solution found yet. Improve: the current assignment is
/// feasible. Restore: a feasible solution is known but the current assignment
/// is not. Dispatch is recomputed every iteration from those two facts.
enum class Mode { search, improve, restore };

/// Step size of the objective-directed perturbation used when Improve has no
/// improving move: one unit, the full distance to the bound, or a random
/// distance in between.
enum class UnitMoveMode { unit, bound, random };

enum class OpKind { tight, lift, unit, bound_jump, random_jump };

struct Params {
  double beta = 0.5;   // discount on violated-stays-violated score terms
  double sp = 0.0003;  // weight smoothing probability

  int c_v = 3;     // violated rows sampled per step
  int o_v = 2000;  // operations sampled from them
  int c_s = 30;    // satisfied rows sampled (Restore)
  int o_s = 350;   // operations sampled from them
  int o_r = 150;   // operations sampled in the random-row fallback

  int tabu_base = 3;
  int tabu_rand = 10;
  std::uint64_t restart_steps = 1'500'000;

  double time_limit = 10.0;      // seconds; used when step_limit == 0
  std::uint64_t step_limit = 0;  // iteration budget; makes runs deterministic
  std::uint64_t seed = 1;

  UnitMoveMode unit_move = UnitMoveMode::unit;
  bool unit_move_enabled = true;

  // Test hook: > 0 replaces the tight-move step with this fixed magnitude
  // (direction unchanged).
  Value fixed_increment = 0;
};

/// Record of one executed move, handed to the observer.
struct AppliedOp {
  std::uint64_t step;
  int var;
  Value old_value, new_value;
  OpKind kind;
  Mode mode;
  std::uint64_t forbid_until;  // reverse-direction tabu stamp (tight moves)
  bool feasible_after;
};

struct RunObserver {
  std::function<void(const AppliedOp&, const Assignment&)> on_apply;
};

struct RunStats {
  std::uint64_t steps = 0;
  std::uint64_t restarts = 0;
  std::uint64_t weight_updates = 0;
  std::uint64_t mode_switches = 0;
  std::uint64_t tight_moves = 0;
  std::uint64_t lift_moves = 0;
  std::uint64_t unit_moves = 0;
  std::uint64_t bound_jumps = 0;
  std::uint64_t random_jumps = 0;
  std::uint64_t skipped_steps = 0;
  bool proved_optimal = false;
  double wall_seconds = 0.0;
};

struct RunResult {
  std::optional<Assignment> best;
  double best_obj = 0.0;  // internal sense; meaningful only when best exists
  PrimalTrace trace;
  RunStats stats;
};

/// Bound-respecting start: the bound closest to zero, or zero when the domain
/// contains it.
Assignment initialize(const Instance& inst);

struct SearchState {
  Assignment current;
  std::optional<Assignment> best;
  double best_obj = 0.0;
  WeightState weights;
  Mode mode = Mode::search;
  std::uint64_t step = 0;
  std::uint64_t steps_since_improve = 0;
  Rng rng;

  // Incrementally maintained caches.
  std::vector<double> acts;
  double current_obj = 0.0;
  std::vector<int> violated;      // unordered
  std::vector<int> violated_pos;  // index into violated, or -1

  // Tabu stamps (step at which the direction becomes allowed again) and
  // per-variable recency for tie-breaking.
  std::vector<std::uint64_t> allow_inc, allow_dec;
  std::vector<std::uint64_t> last_move;
};

class Engine {
 public:
  Engine(const Instance& inst, const Params& params, RunObserver obs = {});

  RunResult run();

  // The run loop split open for tests: prepare() then step_once() until it
  // returns false.
  void prepare();
  bool step_once();
  void search_step();
  void improve_step();
  void restore_step();
  void do_restart();

  const SearchState& state() const { return st_; }
  SearchState& mutable_state() { return st_; }
  const RunStats& stats() const { return stats_; }
  bool finished() const { return finished_; }

 private:
  bool row_violated(int i, double activity) const {
    return inst_.rows[i].rhs - activity < -kFeasEps;
  }
  void add_violated(int i);
  void remove_violated(int i);
  void full_refresh();
  void apply_op(int var, Value new_value, OpKind kind);
  void collect_row_ops(int row, Reservoir<TmOperation>& sink);
  const TmOperation* pick_best(const std::vector<TmOperation>& ops,
                               bool require_positive);
  bool bms_tight(std::vector<int>& pool, int crows, int oops);
  void fallback_random_row();
  void do_update_weights();
  void record_improvement();
  double elapsed() const;

  const Instance& inst_;
  Params params_;
  RunObserver obs_;
  SearchState st_;
  RunStats stats_;
  PrimalTrace trace_;
  bool finished_ = false;
  bool objective_active_ = false;  // score_improve live (Restore mode)
  std::uint64_t moves_since_refresh_ = 0;
  std::vector<int> pool_;
  std::chrono::steady_clock::time_point started_;
};

}  // namespace ilsolve

#endif  // ILSOLVE_ENGINE_HPP_
