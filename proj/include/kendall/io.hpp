#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "kendall/distribution.hpp"
#include "kendall/simulate.hpp"
#include "kendall/validation.hpp"

namespace kendall::io {

// Distribution specs travel as JSON objects, e.g.
//   {"family":"pareto_mix","p":0.5,"alpha":1.0}
//   {"family":"gamma","a":2.0,"b":1.5,"alpha":0.5}
//   {"family":"generic","alpha":1.0,"csv":"table.csv","quad_tol":1e-10}
// A generic spec may carry the table inline as "table": [[x,F],...].
StepDistribution dist_from_json(const nlohmann::json& spec);
StepDistribution dist_from_file(const std::string& path);
nlohmann::ordered_json dist_to_json(const StepDistribution& d);

// Two-column CSV (x, F(x)); x strictly increasing, F clamped to [0,1].
StepDistribution dist_from_cdf_table_csv(KendallIndex alpha, const std::string& path,
                                         double quad_tol = 1e-10);

// Ensemble CSV: a `#`-prefixed JSON comment line echoing the configuration,
// then one terminal value per line (or one row per path when paths were
// recorded).
void write_ensemble_csv(std::ostream& os, const WalkEnsemble& e);

nlohmann::ordered_json report_to_json(const validation::Report& report);
void write_report_text(std::ostream& os, const validation::Report& report);

// Canonical number formatting used in CSV output (shortest round-trip).
std::string format_double(double v);

}  // namespace kendall::io
