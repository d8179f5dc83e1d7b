#include "ilsolve/instance_gen.hpp"

#include <algorithm>
#include <numeric>

namespace ilsolve {

GenResult random_instance(const GenConfig& cfg, Rng& rng) {
  Instance inst;
  int n = cfg.min_vars + (int)rand_below(rng, (std::uint64_t)(cfg.max_vars - cfg.min_vars + 1));
  int m = cfg.min_rows + (int)rand_below(rng, (std::uint64_t)(cfg.max_rows - cfg.min_rows + 1));
  inst.num_vars = n;

  inst.lower.resize(n);
  inst.upper.resize(n);
  for (int j = 0; j < n; ++j) {
    if (cfg.binary) {
      inst.lower[j] = 0;
      inst.upper[j] = 1;
      continue;
    }
    Value a = rand_value(rng, -cfg.bound_abs, cfg.bound_abs);
    Value b = rand_value(rng, -cfg.bound_abs, cfg.bound_abs);
    inst.lower[j] = std::min(a, b);
    inst.upper[j] = std::max(a, b);
  }
  // Keep the domain product enumerable.
  for (;;) {
    double prod = 1.0;
    for (int j = 0; j < n; ++j)
      prod *= (double)(inst.upper[j] - inst.lower[j] + 1);
    if (prod <= (double)cfg.box_budget) break;
    int j = (int)rand_below(rng, (std::uint64_t)n);
    if (inst.upper[j] > inst.lower[j]) --inst.upper[j];
  }

  Assignment anchor(n);
  for (int j = 0; j < n; ++j)
    anchor[j] = rand_value(rng, inst.lower[j], inst.upper[j]);

  std::vector<int> vars(n);
  std::iota(vars.begin(), vars.end(), 0);
  for (int i = 0; i < m; ++i) {
    int k = 1 + (int)rand_below(rng, (std::uint64_t)std::min(n, cfg.max_terms));
    sample_prefix(vars, (std::size_t)k, rng);
    Constraint con;
    for (int t = 0; t < k; ++t) {
      double coeff;
      do {
        coeff = (double)rand_value(rng, -cfg.coeff_abs, cfg.coeff_abs);
      } while (coeff == 0.0);
      con.terms.push_back({vars[t], coeff});
    }
    std::sort(con.terms.begin(), con.terms.end(),
              [](const Term& a, const Term& b) { return a.var < b.var; });
    if (cfg.force_feasible) {
      double at_anchor = 0.0;
      for (const Term& t : con.terms) at_anchor += t.coeff * (double)anchor[t.var];
      con.rhs = at_anchor + (double)rand_value(rng, 0, cfg.slack_max);
    } else {
      con.rhs = (double)rand_value(rng, -4 * cfg.bound_abs, 4 * cfg.bound_abs);
    }
    inst.rows.push_back(std::move(con));
  }

  inst.obj.assign(n, 0.0);
  for (int j = 0; j < n; ++j)
    inst.obj[j] = (double)rand_value(rng, -cfg.coeff_abs, cfg.coeff_abs);
  if (cfg.nonzero_objective) {
    bool any = std::any_of(inst.obj.begin(), inst.obj.end(),
                           [](double c) { return c != 0.0; });
    if (!any) {
      int j = (int)rand_below(rng, (std::uint64_t)n);
      inst.obj[j] = 1.0 + (double)rand_below(rng, (std::uint64_t)cfg.coeff_abs);
    }
  }

  inst.var_names.resize(n);
  inst.con_names.resize(inst.rows.size());
  for (int j = 0; j < n; ++j) inst.var_names[j] = "x" + std::to_string(j);
  for (std::size_t i = 0; i < inst.rows.size(); ++i)
    inst.con_names[i] = "c" + std::to_string(i);
  inst.finalize();

  GenResult out;
  out.inst = std::move(inst);
  if (cfg.force_feasible) out.anchor = std::move(anchor);
  return out;
}

}  // namespace ilsolve
