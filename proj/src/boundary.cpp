#include "ilsolve/boundary.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "ilsolve/engine.hpp"
#include "ilsolve/lift_move.hpp"
#include "ilsolve/tight_move.hpp"

namespace ilsolve {

namespace {

constexpr double kEnumBudget = 1e7;

// Attempt multiplier for samplers that can skip draws.
constexpr int kAttemptFactor = 50;

std::string fmt_value(Value v) {
  if (v <= kNegInf) return "-inf";
  if (v >= kPosInf) return "inf";
  return std::to_string(v);
}

// One unit step from a[j] in direction d leaves the feasible region, either
// through a global bound or through a row containing x_j.
bool dir_blocked(const Instance& inst, const std::vector<double>& acts,
                 const Assignment& a, int j, int d) {
  const Value v = a[j] + d;
  if (v < inst.lower[j] || v > inst.upper[j]) return true;
  for (const auto& e : inst.cols[j]) {
    if (inst.rows[e.row].rhs - (acts[e.row] + e.coeff * static_cast<double>(d)) < 0)
      return true;
  }
  return false;
}

Assignment without_coord(const Assignment& a, int j) {
  Assignment out;
  out.reserve(a.size() - 1);
  for (int k = 0; k < static_cast<int>(a.size()); ++k)
    if (k != j) out.push_back(a[k]);
  return out;
}

Assignment with_coord(const Assignment& key, int j, Value v) {
  Assignment out;
  out.reserve(key.size() + 1);
  for (int k = 0; k < static_cast<int>(key.size()) + 1; ++k) {
    if (k == j)
      out.push_back(v);
    else
      out.push_back(key[k < j ? k : k - 1]);
  }
  return out;
}

}  // namespace

Box Box::of_bounds(const Instance& inst) { return Box{inst.lower, inst.upper}; }

double Box::size() const {
  double p = 1.0;
  for (std::size_t j = 0; j < lo.size(); ++j) {
    if (lo[j] > hi[j]) return 0.0;
    p *= static_cast<double>(hi[j]) - static_cast<double>(lo[j]) + 1.0;
  }
  return p;
}

bool in_polytope(const Instance& inst, const Assignment& a) {
  if (!within_bounds(inst, a)) return false;
  for (int i = 0; i < inst.num_cons; ++i)
    if (slack(inst, i, a) < 0) return false;
  return true;
}

std::vector<Assignment> enumerate_feasible(const Instance& inst,
                                           const Box& box) {
  const int n = inst.num_vars;
  if (static_cast<int>(box.lo.size()) != n ||
      static_cast<int>(box.hi.size()) != n)
    throw std::logic_error("enumerate_feasible: box size mismatch");
  for (int j = 0; j < n; ++j)
    if (box.lo[j] > box.hi[j]) return {};
  const double size = box.size();
  if (!(size <= kEnumBudget)) {
    std::ostringstream os;
    os << "enumeration box holds " << size << " points (cap " << kEnumBudget
       << ")";
    throw BudgetError(os.str());
  }

  Assignment cur = box.lo;
  std::vector<double> acts = compute_activities(inst, cur);
  std::vector<Assignment> out;
  for (;;) {
    bool ok = true;
    for (int i = 0; i < inst.num_cons && ok; ++i)
      ok = inst.rows[i].rhs - acts[i] >= 0;
    if (ok && within_bounds(inst, cur)) out.push_back(cur);

    // Odometer advance, variable 0 fastest; activities follow incrementally.
    int j = 0;
    while (j < n && cur[j] == box.hi[j]) ++j;
    if (j == n) break;
    for (const auto& e : inst.cols[j]) acts[e.row] += e.coeff;
    cur[j] += 1;
    for (int k = 0; k < j; ++k) {
      if (cur[k] == box.lo[k]) continue;
      const double delta = static_cast<double>(box.lo[k] - cur[k]);
      for (const auto& e : inst.cols[k]) acts[e.row] += e.coeff * delta;
      cur[k] = box.lo[k];
    }
  }
  return out;
}

bool is_boundary(const Instance& inst, const Assignment& a) {
  if (!in_polytope(inst, a)) return false;
  const std::vector<double> acts = compute_activities(inst, a);
  for (int j = 0; j < inst.num_vars; ++j)
    for (int d : {1, -1})
      if (dir_blocked(inst, acts, a, j, d)) return true;
  return false;
}

CheckResult check_prop1(const Instance& inst, const Box& box) {
  CheckResult r;
  r.name = "prop1";
  const std::vector<Assignment> pts = enumerate_feasible(inst, box);
  if (pts.empty()) {
    r.status = CheckResult::Status::skipped;
    r.skipped = 1;
    r.detail = "empty feasible set";
    return r;
  }
  std::vector<double> objs(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k)
    objs[k] = evaluate_objective(inst, pts[k]);
  const double lo = *std::min_element(objs.begin(), objs.end());
  const double hi = *std::max_element(objs.begin(), objs.end());
  if (lo == hi) {
    r.status = CheckResult::Status::skipped;
    r.skipped = 1;
    r.detail = "objective constant on the feasible set";
    return r;
  }
  // With a non-constant objective an interior optimum is impossible (both unit
  // neighbors feasible would force the coefficient to zero), so demand that
  // every minimizer is a boundary point.
  double boundary_lo = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const bool bnd = is_boundary(inst, pts[k]);
    if (bnd) boundary_lo = std::min(boundary_lo, objs[k]);
    if (objs[k] == lo && !bnd) {
      r.status = CheckResult::Status::fail;
      ++r.violations;
      r.detail = "optimal point " + describe_point(pts[k]) +
                 " is not a boundary point\n" + describe_instance(inst);
      return r;
    }
  }
  if (boundary_lo != lo) {
    r.status = CheckResult::Status::fail;
    ++r.violations;
    r.detail = "minimum over boundary points differs from overall minimum\n" +
               describe_instance(inst);
    return r;
  }
  r.draws = 1;
  return r;
}

CheckResult check_prop1_family(const GenConfig& cfg, int instances, Rng& rng) {
  CheckResult r;
  r.name = "prop1";
  int attempts = 0;
  while (r.draws < instances && attempts < instances * kAttemptFactor) {
    ++attempts;
    const GenResult gen = random_instance(cfg, rng);
    const CheckResult sub = check_prop1(gen.inst, Box::of_bounds(gen.inst));
    if (sub.status == CheckResult::Status::skipped) {
      ++r.skipped;
      continue;
    }
    ++r.draws;
    if (sub.status == CheckResult::Status::fail) {
      r.status = CheckResult::Status::fail;
      r.violations += sub.violations;
      if (r.detail.empty()) r.detail = sub.detail;
    }
  }
  return r;
}

Value tm_apply_value(const Instance& inst, int j, int i, const Assignment& a) {
  double coeff = 0.0;
  for (const Term& t : inst.rows[i].terms) {
    if (t.var == j) {
      coeff = t.coeff;
      break;
    }
  }
  if (coeff == 0.0) return a[j];
  return tm_shift_target(slack(inst, i, a), coeff, a[j], inst.lower[j],
                         inst.upper[j]);
}

CheckResult check_prop2(const GenConfig& cfg, int draws, Rng& rng,
                        const TmValueFn& tm) {
  CheckResult r;
  r.name = "prop2";
  const TmValueFn fn = tm ? tm : TmValueFn(&tm_apply_value);
  int attempts = 0;
  while (r.draws < draws && attempts < draws * kAttemptFactor) {
    ++attempts;
    const GenResult gen = random_instance(cfg, rng);
    const Instance& inst = gen.inst;
    Assignment x(inst.num_vars);
    for (int j = 0; j < inst.num_vars; ++j)
      x[j] = rand_value(rng, inst.lower[j], inst.upper[j]);
    const int i = static_cast<int>(rand_below(rng, inst.num_cons));
    const auto& terms = inst.rows[i].terms;
    const int j = terms[rand_below(rng, terms.size())].var;

    const Value target = fn(inst, j, i, x);
    if (target == x[j]) {
      ++r.skipped;  // zero step: no operation is generated
      continue;
    }
    Assignment moved = x;
    moved[j] = target;
    ++r.draws;
    if (in_polytope(inst, moved) && !is_boundary(inst, moved)) {
      r.status = CheckResult::Status::fail;
      ++r.violations;
      if (r.detail.empty()) {
        r.detail = "move on row " + std::to_string(i) + ", variable x" +
                   std::to_string(j) + " from " + describe_point(x) + " to " +
                   describe_point(moved) +
                   " lands feasible but interior\n" + describe_instance(inst);
      }
    }
  }
  return r;
}

CheckResult check_prop3(const GenConfig& cfg, int draws, Rng& rng) {
  CheckResult r;
  r.name = "prop3";
  int attempts = 0;
  while (r.draws < draws && attempts < draws * kAttemptFactor) {
    ++attempts;
    const GenResult gen = random_instance(cfg, rng);
    const Instance& inst = gen.inst;

    // A feasible start: rejection sampling with the anchor as fallback.
    Assignment x;
    bool have = false;
    for (int t = 0; t < 30 && !have; ++t) {
      Assignment cand(inst.num_vars);
      for (int j = 0; j < inst.num_vars; ++j)
        cand[j] = rand_value(rng, inst.lower[j], inst.upper[j]);
      if (in_polytope(inst, cand)) {
        x = std::move(cand);
        have = true;
      }
    }
    if (!have && gen.anchor) {
      x = *gen.anchor;
      have = true;
    }
    if (!have) {
      ++r.skipped;
      continue;
    }

    const int j = inst.obj_support[rand_below(rng, inst.obj_support.size())];
    const std::vector<double> acts = compute_activities(inst, x);
    const std::optional<Value> target = lm_target(inst, j, x, acts);
    if (!target) {
      ++r.skipped;  // unbounded lift domain: no operation
      continue;
    }
    Assignment moved = x;
    moved[j] = *target;  // target == x[j] still asserts x itself is boundary
    ++r.draws;
    std::string why;
    if (!in_polytope(inst, moved))
      why = "left the feasible region";
    else if (!is_boundary(inst, moved))
      why = "lands feasible but interior";
    if (!why.empty()) {
      r.status = CheckResult::Status::fail;
      ++r.violations;
      if (r.detail.empty()) {
        r.detail = "lift of x" + std::to_string(j) + " from " +
                   describe_point(x) + " to " + describe_point(moved) + " " +
                   why + "\n" + describe_instance(inst);
      }
    }
  }
  return r;
}

CheckResult check_prop4(const GenConfig& cfg, int runs, std::uint64_t steps,
                        Rng& rng) {
  CheckResult r;
  r.name = "prop4";
  for (int run = 0; run < runs; ++run) {
    const GenResult gen = random_instance(cfg, rng);
    const Instance& inst = gen.inst;
    Params params;
    params.step_limit = steps;
    params.seed = rng();

    // Collect the distinct feasible assignments reached by executed moves.
    // The initial assignment is not move-generated and is excluded.
    std::set<Assignment> seen;
    RunObserver obs;
    obs.on_apply = [&](const AppliedOp& op, const Assignment& cur) {
      if (op.feasible_after) seen.insert(cur);
    };
    Engine engine(inst, params, obs);
    engine.run();

    for (const Assignment& a : seen) {
      ++r.draws;
      if (!is_boundary(inst, a)) {
        r.status = CheckResult::Status::fail;
        ++r.violations;
        if (r.detail.empty()) {
          r.detail = "visited feasible point " + describe_point(a) +
                     " is interior\n" + describe_instance(inst);
        }
      }
    }
  }
  return r;
}

namespace {

// Collinear sampling shared by the segment facts: a random axis line through
// the feasible set with at least two points, widest span first.
struct LineDraw {
  int axis = -1;
  Assignment key;           // coordinates of the line, axis removed
  std::vector<Value> vals;  // sorted feasible values along the axis
};

std::optional<LineDraw> draw_line(const std::vector<Assignment>& pts, int n,
                                  Rng& rng) {
  const int start = n > 0 ? static_cast<int>(rand_below(rng, n)) : 0;
  for (int jj = 0; jj < n; ++jj) {
    const int axis = (start + jj) % n;
    std::vector<std::pair<Assignment, Value>> keyed;
    keyed.reserve(pts.size());
    for (const Assignment& p : pts)
      keyed.emplace_back(without_coord(p, axis), p[axis]);
    std::sort(keyed.begin(), keyed.end());
    // Group and keep the line with the widest value span.
    std::optional<LineDraw> best;
    std::size_t g = 0;
    while (g < keyed.size()) {
      std::size_t h = g;
      while (h < keyed.size() && keyed[h].first == keyed[g].first) ++h;
      if (h - g >= 2) {
        const Value span = keyed[h - 1].second - keyed[g].second;
        if (!best || span > best->vals.back() - best->vals.front()) {
          LineDraw ld;
          ld.axis = axis;
          ld.key = keyed[g].first;
          for (std::size_t k = g; k < h; ++k)
            ld.vals.push_back(keyed[k].second);
          best = std::move(ld);
        }
      }
      g = h;
    }
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace

FactsResult check_facts(const GenConfig& general, const GenConfig& binary,
                        int draws, Rng& rng) {
  FactsResult out;
  out.fact1.name = "fact1";
  out.fact2.name = "fact2";
  out.fact3.name = "fact3";
  out.fact4.name = "fact4";

  // Facts 1 and 2 share the collinear-pair sampler: take the extreme pair of
  // an axis line and walk the integer points between them.
  int attempts = 0;
  while (out.fact1.draws < draws && attempts < draws * kAttemptFactor) {
    ++attempts;
    const GenResult gen = random_instance(general, rng);
    const Instance& inst = gen.inst;
    const std::vector<Assignment> pts =
        enumerate_feasible(inst, Box::of_bounds(inst));
    if (pts.size() < 2) {
      ++out.fact1.skipped;
      ++out.fact2.skipped;
      continue;
    }
    const std::optional<LineDraw> line = draw_line(pts, inst.num_vars, rng);
    if (!line || line->vals.back() - line->vals.front() < 2) {
      ++out.fact1.skipped;  // no interior points between the pair
      ++out.fact2.skipped;
      continue;
    }
    ++out.fact1.draws;
    ++out.fact2.draws;
    const Value v_lo = line->vals.front(), v_hi = line->vals.back();
    const double o_lo = evaluate_objective(
        inst, with_coord(line->key, line->axis, v_lo));
    const double o_hi = evaluate_objective(
        inst, with_coord(line->key, line->axis, v_hi));
    for (Value v = v_lo + 1; v < v_hi; ++v) {
      const Assignment p = with_coord(line->key, line->axis, v);
      if (!in_polytope(inst, p)) {
        out.fact1.status = CheckResult::Status::fail;
        ++out.fact1.violations;
        if (out.fact1.detail.empty()) {
          out.fact1.detail = describe_point(p) +
                             " between two feasible points is infeasible\n" +
                             describe_instance(inst);
        }
      }
      const double o = evaluate_objective(inst, p);
      if (o < std::min(o_lo, o_hi) || o > std::max(o_lo, o_hi)) {
        out.fact2.status = CheckResult::Status::fail;
        ++out.fact2.violations;
        if (out.fact2.detail.empty()) {
          out.fact2.detail = "objective at " + describe_point(p) +
                             " leaves the segment range\n" +
                             describe_instance(inst);
        }
      }
    }
  }

  // Fact 3: each boundary point should maximize one of its blocked unit
  // directions over the feasible set, i.e. be optimal for the objective built
  // from that direction.
  attempts = 0;
  while (out.fact3.draws < draws && attempts < draws * kAttemptFactor) {
    ++attempts;
    const GenResult gen = random_instance(general, rng);
    const Instance& inst = gen.inst;
    const std::vector<Assignment> pts =
        enumerate_feasible(inst, Box::of_bounds(inst));
    if (pts.empty()) {
      ++out.fact3.skipped;
      continue;
    }
    std::vector<Value> maxv(inst.num_vars, std::numeric_limits<Value>::min());
    std::vector<Value> minv(inst.num_vars, std::numeric_limits<Value>::max());
    for (const Assignment& p : pts) {
      for (int j = 0; j < inst.num_vars; ++j) {
        maxv[j] = std::max(maxv[j], p[j]);
        minv[j] = std::min(minv[j], p[j]);
      }
    }
    for (const Assignment& p : pts) {
      if (out.fact3.draws >= draws) break;
      const std::vector<double> acts = compute_activities(inst, p);
      bool any_blocked = false;
      bool certified = false;
      for (int j = 0; j < inst.num_vars && !certified; ++j) {
        if (dir_blocked(inst, acts, p, j, 1)) {
          any_blocked = true;
          certified = p[j] == maxv[j];
        }
        if (!certified && dir_blocked(inst, acts, p, j, -1)) {
          any_blocked = true;
          certified = p[j] == minv[j];
        }
      }
      if (!any_blocked) continue;  // interior points are outside the claim
      ++out.fact3.draws;
      if (!certified) {
        out.fact3.status = CheckResult::Status::fail;
        ++out.fact3.violations;
        if (out.fact3.detail.empty()) {
          out.fact3.detail = "boundary point " + describe_point(p) +
                             " is optimal for none of its blocked directions\n" +
                             describe_instance(inst);
        }
      }
    }
  }

  // Fact 4: with binary domains every feasible point is boundary.
  attempts = 0;
  while (out.fact4.draws < draws && attempts < draws * kAttemptFactor) {
    ++attempts;
    const GenResult gen = random_instance(binary, rng);
    const Instance& inst = gen.inst;
    const std::vector<Assignment> pts =
        enumerate_feasible(inst, Box::of_bounds(inst));
    if (pts.empty()) {
      ++out.fact4.skipped;
      continue;
    }
    for (const Assignment& p : pts) {
      if (out.fact4.draws >= draws) break;
      ++out.fact4.draws;
      if (!is_boundary(inst, p)) {
        out.fact4.status = CheckResult::Status::fail;
        ++out.fact4.violations;
        if (out.fact4.detail.empty()) {
          out.fact4.detail = "feasible binary point " + describe_point(p) +
                             " is interior\n" + describe_instance(inst);
        }
      }
    }
  }

  return out;
}

std::string describe_instance(const Instance& inst) {
  std::ostringstream os;
  os << "min";
  bool first = true;
  for (int j : inst.obj_support) {
    os << (first ? " " : " + ") << inst.obj[j] << "*x" << j;
    first = false;
  }
  if (first) os << " 0";
  os << "\n";
  for (int i = 0; i < inst.num_cons; ++i) {
    os << "  ";
    for (std::size_t k = 0; k < inst.rows[i].terms.size(); ++k) {
      const Term& t = inst.rows[i].terms[k];
      os << (k ? " + " : "") << t.coeff << "*x" << t.var;
    }
    os << " <= " << inst.rows[i].rhs << "\n";
  }
  for (int j = 0; j < inst.num_vars; ++j) {
    os << "  " << fmt_value(inst.lower[j]) << " <= x" << j
       << " <= " << fmt_value(inst.upper[j]) << "\n";
  }
  return os.str();
}

std::string describe_point(const Assignment& a) {
  std::ostringstream os;
  os << "(";
  for (std::size_t j = 0; j < a.size(); ++j) os << (j ? ", " : "") << a[j];
  os << ")";
  return os.str();
}

}  // namespace ilsolve
