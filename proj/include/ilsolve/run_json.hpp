#ifndef ILSOLVE_RUN_JSON_HPP_
#define ILSOLVE_RUN_JSON_HPP_

#include <string>

#include "ilsolve/engine.hpp"
#include "ilsolve/metrics.hpp"
#include "ilsolve/model.hpp"

namespace ilsolve {

/// Run statistics and the improvement trace as JSON ("schema": 1). Under a
/// step budget the output is a pure function of (instance, params, seed);
/// wall-clock fields appear only in wall-clock mode.
std::string run_json(const Instance& inst, const std::string& instance_name,
                     const Params& params, const RunResult& result);

/// Benchmark report as JSON ("schema": 1): per-run rows plus the per-config
/// summary.
std::string report_json(const Report& report);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace ilsolve

#endif  // ILSOLVE_RUN_JSON_HPP_
