#pragma once

#include <optional>

#include "json.hpp"
#include "mnsl/ensemble.hpp"
#include "mnsl/harness.hpp"
#include "mnsl/uq.hpp"

namespace mnsl {

using Json = nlohmann::ordered_json;

Json to_json(const LearnerSpec& spec);
LearnerSpec learner_spec_from_json(const Json& j);

/// Fields present in `j` override `base`. Unknown keys are rejected.
ScenarioConfig scenario_config_from_json(const Json& j, ScenarioConfig base);
Json to_json(const ScenarioConfig& cfg);

/// cv_risks, selected_index, weights, fold seed and cutoff of a fitted SL.
Json model_report(const SuperLearnerModel& m);

Json uq_report(const OobResult& oob, const UQModel& model,
               std::optional<double> confidence_at_observed = std::nullopt);

Json to_json(const ResultsTable& table);
Json to_json(const Selection& s);

}  // namespace mnsl
