#include "ilsolve/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace ilsolve {

void Instance::finalize() {
  if ((int)obj.size() != num_vars) throw std::logic_error("objective size mismatch");
  num_cons = (int)rows.size();

  obj_support.clear();
  for (int j = 0; j < num_vars; ++j)
    if (obj[j] != 0.0) obj_support.push_back(j);

  if ((int)lower.size() != num_vars || (int)upper.size() != num_vars)
    throw std::logic_error("bound vector size mismatch");
  for (int j = 0; j < num_vars; ++j) {
    if (is_pos_inf(lower[j]) || is_neg_inf(upper[j]))
      throw std::logic_error("bound sentinel on wrong side");
    if (is_finite(lower[j]) && is_finite(upper[j]) && lower[j] > upper[j])
      throw std::logic_error("empty variable domain");
  }

  cols.assign(num_vars, {});
  for (int i = 0; i < num_cons; ++i) {
    const Constraint& con = rows[i];
    if (con.terms.empty()) throw std::logic_error("empty row");
    int prev = -1;
    for (const Term& t : con.terms) {
      if (t.var <= prev) throw std::logic_error("row terms not strictly increasing");
      if (t.var < 0 || t.var >= num_vars) throw std::logic_error("term var out of range");
      if (t.coeff == 0.0) throw std::logic_error("zero coefficient stored");
      prev = t.var;
      cols[t.var].push_back({i, t.coeff});
    }
  }
}

double evaluate_objective(const Instance& inst, const Assignment& a) {
  double v = 0.0;
  for (int j : inst.obj_support) v += inst.obj[j] * (double)a[j];
  return v;
}

double slack(const Instance& inst, int i, const Assignment& a) {
  const Constraint& con = inst.rows[i];
  double activity = 0.0;
  for (const Term& t : con.terms) activity += t.coeff * (double)a[t.var];
  return con.rhs - activity;
}

std::vector<double> compute_activities(const Instance& inst, const Assignment& a) {
  std::vector<double> acts(inst.num_cons, 0.0);
  for (int i = 0; i < inst.num_cons; ++i) {
    double activity = 0.0;
    for (const Term& t : inst.rows[i].terms) activity += t.coeff * (double)a[t.var];
    acts[i] = activity;
  }
  return acts;
}

bool within_bounds(const Instance& inst, const Assignment& a) {
  for (int j = 0; j < inst.num_vars; ++j) {
    if (!is_neg_inf(inst.lower[j]) && a[j] < inst.lower[j]) return false;
    if (!is_pos_inf(inst.upper[j]) && a[j] > inst.upper[j]) return false;
  }
  return true;
}

bool is_feasible(const Instance& inst, const Assignment& a) {
  if (!within_bounds(inst, a)) return false;
  for (int i = 0; i < inst.num_cons; ++i)
    if (slack(inst, i, a) < -kFeasEps) return false;
  return true;
}

std::vector<int> violated_rows(const Instance& inst, const Assignment& a) {
  std::vector<int> out;
  for (int i = 0; i < inst.num_cons; ++i)
    if (slack(inst, i, a) < -kFeasEps) out.push_back(i);
  return out;
}

}  // namespace ilsolve
