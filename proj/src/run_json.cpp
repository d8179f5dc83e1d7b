#include "ilsolve/run_json.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ilsolve {

using json = nlohmann::ordered_json;

std::string run_json(const Instance& inst, const std::string& instance_name,
                     const Params& params, const RunResult& result) {
  bool step_mode = params.step_limit > 0;
  json j;
  j["schema"] = 1;
  j["instance"] = instance_name;
  j["seed"] = params.seed;
  j["budget_mode"] = step_mode ? "steps" : "seconds";
  j["budget"] = step_mode ? (double)params.step_limit : params.time_limit;
  j["feasible"] = result.best.has_value();
  if (result.best) {
    j["objective"] = inst.reported_objective(result.best_obj);
    j["objective_internal"] = result.best_obj;
  } else {
    j["objective"] = nullptr;
    j["objective_internal"] = nullptr;
  }
  j["proved_optimal"] = result.stats.proved_optimal;
  j["steps"] = result.stats.steps;
  j["restarts"] = result.stats.restarts;
  j["moves"] = {{"tight", result.stats.tight_moves},
                {"lift", result.stats.lift_moves},
                {"unit", result.stats.unit_moves},
                {"bound", result.stats.bound_jumps},
                {"random", result.stats.random_jumps}};
  j["weight_updates"] = result.stats.weight_updates;
  if (!step_mode) j["wall_seconds"] = result.stats.wall_seconds;
  json events = json::array();
  for (const TraceEvent& e : result.trace.events)
    events.push_back({{"t", e.t}, {"objective", inst.reported_objective(e.obj)}});
  j["events"] = events;
  return j.dump(2) + "\n";
}

std::string report_json(const Report& report) {
  json j;
  j["schema"] = 1;
  json rows = json::array();
  for (const ReportRow& r : report.rows) {
    json row;
    row["instance"] = r.instance;
    row["config"] = r.config;
    row["feasible"] = r.feasible;
    if (r.feasible)
      row["objective"] = r.best_obj;
    else
      row["objective"] = nullptr;
    if (r.reference_source == "none")
      row["reference"] = nullptr;
    else
      row["reference"] = r.reference;
    row["reference_source"] = r.reference_source;
    row["primal_integral"] = r.primal_integral;
    rows.push_back(row);
  }
  j["runs"] = rows;
  json sums = json::array();
  for (const ConfigSummary& s : report.summary)
    sums.push_back({{"config", s.config},
                    {"feasible", s.feasible_count},
                    {"wins", s.win_count},
                    {"mean_primal_integral", s.mean_primal_integral}});
  j["summary"] = sums;
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

}  // namespace ilsolve
