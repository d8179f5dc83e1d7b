#include "ilsolve/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace ilsolve {

double primal_gap(double reference, double found) {
  if (reference == 0.0 && found == 0.0) return 0.0;
  if (reference * found < 0.0) return 1.0;
  return std::fabs(reference - found) /
         std::max(std::fabs(reference), std::fabs(found));
}

double primal_gap_function(const PrimalTrace& trace, double t) {
  double best = 0.0;
  bool seen = false;
  for (const TraceEvent& e : trace.events) {
    if (e.t > t) break;
    best = e.obj;  // events are strictly improving
    seen = true;
  }
  if (!seen) return 1.0;
  if (!trace.reference)
    throw std::logic_error("primal gap needs a reference objective");
  return primal_gap(*trace.reference, best);
}

double primal_integral(const PrimalTrace& trace) {
  double total = 0.0;
  double prev_t = 0.0;
  double prev_gap = 1.0;
  for (const TraceEvent& e : trace.events) {
    total += prev_gap * (e.t - prev_t);
    if (!trace.reference)
      throw std::logic_error("primal integral needs a reference objective");
    prev_t = e.t;
    prev_gap = primal_gap(*trace.reference, e.obj);
  }
  total += prev_gap * (trace.t_max - prev_t);
  return total;
}

Report aggregate(const std::vector<RunRecord>& runs,
                 const std::map<std::string, double>& references) {
  std::set<std::string> instances, configs;
  for (const RunRecord& r : runs) {
    instances.insert(r.instance);
    configs.insert(r.config);
  }
  std::map<std::pair<std::string, std::string>, const RunRecord*> cell;
  for (const RunRecord& r : runs) {
    auto key = std::make_pair(r.instance, r.config);
    if (cell.count(key))
      throw MissingRunError("duplicate run for " + r.instance + " / " + r.config);
    cell[key] = &r;
  }
  for (const std::string& ins : instances)
    for (const std::string& cfg : configs)
      if (!cell.count({ins, cfg}))
        throw MissingRunError("missing run for " + ins + " / " + cfg);

  Report rep;
  std::map<std::string, ConfigSummary> sums;
  for (const std::string& cfg : configs) sums[cfg].config = cfg;

  for (const std::string& ins : instances) {
    // Reference: provided, else best across configs, else none (gap stays 1).
    double ref = 0.0;
    std::string source = "none";
    bool have_ref = false;
    if (auto it = references.find(ins); it != references.end()) {
      ref = it->second;
      source = "given";
      have_ref = true;
    } else {
      for (const std::string& cfg : configs) {
        const RunRecord& r = *cell.at({ins, cfg});
        if (r.error || r.trace.events.empty()) continue;
        double found = r.trace.events.back().obj;
        if (!have_ref || found < ref) ref = found;
        have_ref = true;
      }
      if (have_ref) source = "matrix";
    }

    double best_across = 0.0;
    bool any_feasible = false;
    for (const std::string& cfg : configs) {
      const RunRecord& r = *cell.at({ins, cfg});
      if (r.error || r.trace.events.empty()) continue;
      double found = r.trace.events.back().obj;
      if (!any_feasible || found < best_across) best_across = found;
      any_feasible = true;
    }

    for (const std::string& cfg : configs) {
      const RunRecord& r = *cell.at({ins, cfg});
      ReportRow row;
      row.instance = ins;
      row.config = cfg;
      row.feasible = !r.error && !r.trace.events.empty();
      row.best_obj = row.feasible ? r.trace.events.back().obj : 0.0;
      row.reference = have_ref ? ref : 0.0;
      row.reference_source = source;

      PrimalTrace tr = r.trace;
      if (have_ref) tr.reference = ref;
      if (!row.feasible) {
        row.primal_integral = tr.t_max;  // gap 1 throughout
      } else {
        row.primal_integral = primal_integral(tr);
      }
      rep.rows.push_back(row);

      ConfigSummary& s = sums[cfg];
      if (row.feasible) {
        ++s.feasible_count;
        if (any_feasible && row.best_obj <= best_across + 1e-6) ++s.win_count;
      }
      s.mean_primal_integral += row.primal_integral;
    }
  }

  for (auto& [cfg, s] : sums) {
    if (!instances.empty())
      s.mean_primal_integral /= (double)instances.size();
    rep.summary.push_back(s);
  }
  std::sort(rep.rows.begin(), rep.rows.end(),
            [](const ReportRow& a, const ReportRow& b) {
              return std::tie(a.instance, a.config) < std::tie(b.instance, b.config);
            });
  return rep;
}

std::string report_csv(const Report& report) {
  std::ostringstream out;
  out << "config,feasible,wins,mean_primal_integral\n";
  for (const ConfigSummary& s : report.summary) {
    char num[64];
    std::snprintf(num, sizeof num, "%.6f", s.mean_primal_integral);
    out << s.config << ',' << s.feasible_count << ',' << s.win_count << ','
        << num << '\n';
  }
  return out.str();
}

}  // namespace ilsolve
