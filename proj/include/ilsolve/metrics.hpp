#ifndef ILSOLVE_METRICS_HPP_
#define ILSOLVE_METRICS_HPP_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ilsolve {

/// A best-objective improvement at time t (seconds, or steps when a run uses
/// a step budget). Objectives are in minimization sense.
struct TraceEvent {
  double t;
  double obj;
};

/// Improvement history of one run: events strictly increasing in t and
/// strictly decreasing in obj, horizon t_max, and the reference objective the
/// gap is measured against (when known).
struct PrimalTrace {
  std::vector<TraceEvent> events;
  double t_max = 0.0;
  std::optional<double> reference;
};

class MissingRunError : public std::runtime_error {
 public:
  explicit MissingRunError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Relative distance of found from reference in [0, 1]: 0 when both are zero,
/// 1 when they disagree in sign, |ref - found| / max(|ref|, |found|) otherwise.
double primal_gap(double reference, double found);

/// Gap of the best objective known at time t; 1 before the first event.
/// Requires t in [0, t_max] and, once events exist, a reference.
double primal_gap_function(const PrimalTrace& trace, double t);

/// Integral of primal_gap_function over [0, t_max]. Smaller is better; an
/// eventless trace integrates to t_max.
double primal_integral(const PrimalTrace& trace);

/// One run in a benchmark matrix. A failed run keeps its t_max but has no
/// events and error set.
struct RunRecord {
  std::string instance;
  std::string config;
  PrimalTrace trace;
  bool error = false;
};

struct ReportRow {
  std::string instance;
  std::string config;
  bool feasible = false;
  double best_obj = 0.0;  // meaningful only when feasible
  double reference = 0.0;
  std::string reference_source;  // "given", "matrix", "none"
  double primal_integral = 0.0;
};

struct ConfigSummary {
  std::string config;
  int feasible_count = 0;
  int win_count = 0;
  double mean_primal_integral = 0.0;
};

struct Report {
  std::vector<ReportRow> rows;        // sorted by (instance, config)
  std::vector<ConfigSummary> summary; // sorted by config
};

/// Aggregates a complete instance x config matrix. Throws MissingRunError if
/// any pair is absent or duplicated. Instances without a provided reference
/// use the best objective any config found (flagged "matrix"); if no config
/// found anything the gap stays 1 throughout. A win is a best objective
/// within 1e-6 of the best across configs; ties count for every config.
Report aggregate(const std::vector<RunRecord>& runs,
                 const std::map<std::string, double>& references = {});

std::string report_csv(const Report& report);

}  // namespace ilsolve

#endif  // ILSOLVE_METRICS_HPP_
