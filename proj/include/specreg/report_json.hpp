#pragma once

#include <json.hpp>

#include "specreg/bounds.hpp"
#include "specreg/experiment.hpp"

namespace specreg {

nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

nlohmann::json bound_terms_to_json(const BoundTerms& t);
nlohmann::json bound_report_to_json(const BoundReport& r);
nlohmann::json corollary_report_to_json(const CorollaryReport& r);
nlohmann::json lemma_product_to_json(const LemmaProductReport& r);
nlohmann::json secsum_to_json(const SecsumReport& r);
nlohmann::json relations_to_json(const RelationReport& r);

/// Summary JSON for a run: resolved config, per-N arrays over trials, and any
/// bound or lemma reports. Contains no timing data.
nlohmann::json summary_to_json(const RunRecord& record);

/// Key under which the log tail at level eps is stored, e.g. "log_tail_0.01".
std::string log_tail_key(double eps);

}  // namespace specreg
