#include "ilsolve/engine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace ilsolve {

namespace {

// Full activity recomputation period; bounds drift from incremental updates.
constexpr std::uint64_t kRefreshPeriod = 1'000'000;

// Random resampling attempts before a fallback step is abandoned.
constexpr int kFallbackRetries = 10;

// Half-width used when a restart samples a variable with an infinite bound.
constexpr Value kUnboundedSpan = 1'000'000;

}  // namespace

Assignment initialize(const Instance& inst) {
  Assignment a(inst.num_vars);
  for (int j = 0; j < inst.num_vars; ++j) {
    if (inst.lower[j] > 0)
      a[j] = inst.lower[j];
    else if (inst.upper[j] < 0)
      a[j] = inst.upper[j];
    else
      a[j] = 0;
  }
  return a;
}

Engine::Engine(const Instance& inst, const Params& params, RunObserver obs)
    : inst_(inst), params_(params), obs_(std::move(obs)) {}

double Engine::elapsed() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       started_)
      .count();
}

void Engine::prepare() {
  st_.current = initialize(inst_);
  st_.best.reset();
  st_.best_obj = std::numeric_limits<double>::infinity();
  st_.weights = WeightState::make(inst_.num_cons, params_.sp);
  st_.mode = Mode::search;
  st_.step = 0;
  st_.steps_since_improve = 0;
  st_.rng.seed(params_.seed);
  st_.allow_inc.assign(inst_.num_vars, 0);
  st_.allow_dec.assign(inst_.num_vars, 0);
  st_.last_move.assign(inst_.num_vars, 0);
  stats_ = RunStats{};
  trace_ = PrimalTrace{};
  finished_ = false;
  moves_since_refresh_ = 0;
  full_refresh();
  started_ = std::chrono::steady_clock::now();
}

void Engine::add_violated(int i) {
  st_.violated_pos[i] = (int)st_.violated.size();
  st_.violated.push_back(i);
}

void Engine::remove_violated(int i) {
  int p = st_.violated_pos[i];
  int last = st_.violated.back();
  st_.violated[p] = last;
  st_.violated_pos[last] = p;
  st_.violated.pop_back();
  st_.violated_pos[i] = -1;
}

void Engine::full_refresh() {
  st_.acts = compute_activities(inst_, st_.current);
  st_.current_obj = evaluate_objective(inst_, st_.current);
  st_.violated.clear();
  st_.violated_pos.assign(inst_.num_cons, -1);
  for (int i = 0; i < inst_.num_cons; ++i)
    if (row_violated(i, st_.acts[i])) add_violated(i);
  moves_since_refresh_ = 0;
}

void Engine::apply_op(int var, Value new_value, OpKind kind) {
  assert(kind == OpKind::tight ? !st_.violated.empty() : st_.violated.empty());
  Value old_value = st_.current[var];
  double delta = (double)(new_value - old_value);
  for (const ColEntry& e : inst_.cols[var]) {
    double after = st_.acts[e.row] + e.coeff * delta;
    bool was = st_.violated_pos[e.row] >= 0;
    bool now = row_violated(e.row, after);
    st_.acts[e.row] = after;
    if (was != now) {
      if (now)
        add_violated(e.row);
      else
        remove_violated(e.row);
    }
  }
  st_.current[var] = new_value;
  st_.current_obj += inst_.obj[var] * delta;
  st_.last_move[var] = st_.step;

  std::uint64_t stamp = 0;
  if (kind == OpKind::tight) {
    stamp = st_.step + (std::uint64_t)params_.tabu_base +
            rand_below(st_.rng, (std::uint64_t)params_.tabu_rand);
    if (new_value > old_value)
      st_.allow_dec[var] = stamp;
    else
      st_.allow_inc[var] = stamp;
  }

  switch (kind) {
    case OpKind::tight: ++stats_.tight_moves; break;
    case OpKind::lift: ++stats_.lift_moves; break;
    case OpKind::unit: ++stats_.unit_moves; break;
    case OpKind::bound_jump: ++stats_.bound_jumps; break;
    case OpKind::random_jump: ++stats_.random_jumps; break;
  }

  if (++moves_since_refresh_ >= kRefreshPeriod) full_refresh();

  if (obs_.on_apply)
    obs_.on_apply(AppliedOp{st_.step, var, old_value, new_value, kind,
                            st_.mode, stamp, st_.violated.empty()},
                  st_.current);
}

void Engine::collect_row_ops(int row, Reservoir<TmOperation>& sink) {
  double slk = inst_.rows[row].rhs - st_.acts[row];
  for (const Term& t : inst_.rows[row].terms) {
    Value alpha = st_.current[t.var];
    Value target;
    if (params_.fixed_increment > 0) {
      // Fixed-magnitude replacement for the tight step; same direction.
      bool up = slk < 0.0 ? t.coeff < 0.0 : t.coeff > 0.0;
      if (up) {
        Value room = is_pos_inf(inst_.upper[t.var]) ? params_.fixed_increment
                                                    : inst_.upper[t.var] - alpha;
        target = alpha + std::min(params_.fixed_increment, room);
      } else {
        Value room = is_neg_inf(inst_.lower[t.var]) ? params_.fixed_increment
                                                    : alpha - inst_.lower[t.var];
        target = alpha - std::min(params_.fixed_increment, room);
      }
    } else {
      target = tm_shift_target(slk, t.coeff, alpha, inst_.lower[t.var],
                               inst_.upper[t.var]);
    }
    if (target == alpha) continue;
    std::uint64_t allow = target > alpha ? st_.allow_inc[t.var] : st_.allow_dec[t.var];
    if (st_.step < allow) continue;  // tabu
    sink.offer(TmOperation{t.var, row, alpha, target});
  }
}

const TmOperation* Engine::pick_best(const std::vector<TmOperation>& ops,
                                     bool require_positive) {
  const TmOperation* best = nullptr;
  double best_score = 0.0;
  for (const TmOperation& op : ops) {
    double sc = score_reduce(inst_, op, st_.weights, params_.beta, st_.acts) +
                score_improve(inst_, op, st_.weights, objective_active_,
                              st_.current_obj, st_.best_obj);
    if (require_positive && sc <= 0.0) continue;
    if (!best) {
      best = &op;
      best_score = sc;
      continue;
    }
    if (sc > best_score) {
      best = &op;
      best_score = sc;
    } else if (sc == best_score) {
      std::uint64_t a = st_.last_move[op.var], b = st_.last_move[best->var];
      if (a < b || (a == b && rand_below(st_.rng, 2) == 0)) {
        best = &op;
        best_score = sc;
      }
    }
  }
  return best;
}

bool Engine::bms_tight(std::vector<int>& pool, int crows, int oops) {
  if (pool.empty()) return false;
  sample_prefix(pool, (std::size_t)crows, st_.rng);
  std::size_t take = std::min((std::size_t)crows, pool.size());
  Reservoir<TmOperation> res((std::size_t)oops, st_.rng);
  for (std::size_t k = 0; k < take; ++k) collect_row_ops(pool[k], res);
  const TmOperation* best = pick_best(res.items(), true);
  if (!best) return false;
  apply_op(best->var, best->new_value, OpKind::tight);
  return true;
}

void Engine::do_update_weights() {
  update_weights(inst_, st_.acts, st_.current_obj, st_.weights, st_.best_obj,
                 st_.best.has_value(), st_.rng);
  ++stats_.weight_updates;
}

void Engine::fallback_random_row() {
  do_update_weights();
  for (int attempt = 0; attempt < kFallbackRetries; ++attempt) {
    int row = st_.violated[rand_below(st_.rng, st_.violated.size())];
    Reservoir<TmOperation> res((std::size_t)params_.o_r, st_.rng);
    collect_row_ops(row, res);
    const TmOperation* best = pick_best(res.items(), false);
    if (!best) continue;
    apply_op(best->var, best->new_value, OpKind::tight);
    return;
  }
  do_update_weights();
  ++stats_.skipped_steps;
}

void Engine::search_step() {
  pool_ = st_.violated;
  if (bms_tight(pool_, params_.c_v, params_.o_v)) return;
  fallback_random_row();
}

void Engine::restore_step() {
  pool_ = st_.violated;
  if (bms_tight(pool_, params_.c_v, params_.o_v)) return;
  pool_.clear();
  for (int i = 0; i < inst_.num_cons; ++i)
    if (st_.violated_pos[i] < 0) pool_.push_back(i);
  if (bms_tight(pool_, params_.c_s, params_.o_s)) return;
  fallback_random_row();
}

void Engine::improve_step() {
  // Best strictly improving lift across the objective variables.
  bool have = false;
  LmOperation best_op;
  double best_score = 0.0;
  for (int j : inst_.obj_support) {
    std::optional<LmOperation> cand = lm_candidate(inst_, j, st_.current, st_.acts);
    if (!cand) continue;
    double sc = score_lm(inst_, *cand);
    if (sc <= 0.0) continue;
    if (!have || sc > best_score) {
      have = true;
      best_op = *cand;
      best_score = sc;
    } else if (sc == best_score) {
      std::uint64_t a = st_.last_move[cand->var], b = st_.last_move[best_op.var];
      if (a < b || (a == b && rand_below(st_.rng, 2) == 0)) best_op = *cand;
    }
  }
  if (have) {
    apply_op(best_op.var, best_op.new_value, OpKind::lift);
    return;
  }

  if (!params_.unit_move_enabled) {
    // No improving lift and perturbation disabled: nothing further to try.
    finished_ = true;
    return;
  }

  // Perturb toward the objective. A variable qualifies when one unit in its
  // improving direction respects the global bound; if none qualifies, every
  // objective variable sits at its improving bound and the current solution
  // is optimal.
  pool_.clear();
  for (int j : inst_.obj_support) {
    if (inst_.obj[j] < 0.0 ? st_.current[j] < inst_.upper[j]
                           : st_.current[j] > inst_.lower[j])
      pool_.push_back(j);
  }
  if (pool_.empty()) {
    finished_ = true;
    stats_.proved_optimal = true;
    return;
  }
  int j = pool_[rand_below(st_.rng, pool_.size())];
  bool up = inst_.obj[j] < 0.0;
  Value bound = up ? inst_.upper[j] : inst_.lower[j];
  Value room = is_finite(bound)
                   ? (up ? bound - st_.current[j] : st_.current[j] - bound)
                   : kPosInf;
  Value step = 1;
  OpKind kind = OpKind::unit;
  switch (params_.unit_move) {
    case UnitMoveMode::unit:
      step = 1;
      kind = OpKind::unit;
      break;
    case UnitMoveMode::bound:
      step = is_pos_inf(room) ? 1 : room;
      kind = OpKind::bound_jump;
      break;
    case UnitMoveMode::random: {
      Value span = is_pos_inf(room) ? kUnboundedSpan : std::min(room, kUnboundedSpan);
      step = 1 + (Value)rand_below(st_.rng, (std::uint64_t)span);
      kind = OpKind::random_jump;
      break;
    }
  }
  apply_op(j, up ? st_.current[j] + step : st_.current[j] - step, kind);
}

void Engine::record_improvement() {
  if (!st_.violated.empty()) return;
  if (st_.current_obj >= st_.best_obj) return;
  st_.best = st_.current;
  st_.best_obj = st_.current_obj;
  st_.steps_since_improve = 0;
  double t = params_.step_limit > 0 ? (double)st_.step : elapsed();
  if (!trace_.events.empty() && t <= trace_.events.back().t)
    t = trace_.events.back().t + 1e-9;
  trace_.events.push_back({t, st_.current_obj});
}

bool Engine::step_once() {
  record_improvement();
  if (finished_) return false;
  if (params_.step_limit > 0) {
    if (st_.step >= params_.step_limit) return false;
  } else if ((st_.step & 255u) == 0 && elapsed() >= params_.time_limit) {
    return false;
  }

  Mode mode = !st_.best      ? Mode::search
              : st_.violated.empty() ? Mode::improve
                                     : Mode::restore;
  if (mode != st_.mode) ++stats_.mode_switches;
  st_.mode = mode;
  objective_active_ = mode == Mode::restore;

  switch (mode) {
    case Mode::search: search_step(); break;
    case Mode::improve: improve_step(); break;
    case Mode::restore: restore_step(); break;
  }
  ++st_.step;
  ++st_.steps_since_improve;
  if (finished_) {
    record_improvement();
    return false;
  }
  if (st_.steps_since_improve >= params_.restart_steps) do_restart();
  return true;
}

void Engine::do_restart() {
  for (int j = 0; j < inst_.num_vars; ++j) {
    if (st_.best && rand_below(st_.rng, 2) == 0) {
      st_.current[j] = (*st_.best)[j];
      continue;
    }
    Value ref = st_.best ? (*st_.best)[j] : st_.current[j];
    Value lo = is_neg_inf(inst_.lower[j]) ? ref - kUnboundedSpan : inst_.lower[j];
    Value hi = is_pos_inf(inst_.upper[j]) ? ref + kUnboundedSpan : inst_.upper[j];
    st_.current[j] = rand_value(st_.rng, lo, hi);
  }
  st_.weights = WeightState::make(inst_.num_cons, params_.sp);
  std::fill(st_.allow_inc.begin(), st_.allow_inc.end(), 0);
  std::fill(st_.allow_dec.begin(), st_.allow_dec.end(), 0);
  st_.steps_since_improve = 0;
  full_refresh();
  ++stats_.restarts;
}

RunResult Engine::run() {
  prepare();
  while (step_once()) {
  }
  stats_.steps = st_.step;
  stats_.wall_seconds = elapsed();
  trace_.t_max = params_.step_limit > 0 ? (double)params_.step_limit
                                        : params_.time_limit;
  if (!trace_.events.empty())
    trace_.t_max = std::max(trace_.t_max, trace_.events.back().t);

  RunResult res;
  res.best = st_.best;
  res.best_obj = st_.best ? st_.best_obj : 0.0;
  res.trace = trace_;
  res.stats = stats_;
  return res;
}

}  // namespace ilsolve
