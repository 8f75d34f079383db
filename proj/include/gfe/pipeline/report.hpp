#pragma once

#include "gfe/pipeline/pipeline.hpp"
#include "json.hpp"

namespace gfe::pipeline {

using nlohmann::json;

inline constexpr int kReportSchemaVersion = 1;

json to_json(const STValue& v);
json to_json(const SolutionTriple& s);
json to_json(const Claim& c);
json to_json(const chabauty::ClassRecord& r);
json to_json(const chabauty::ChabautyOutcome& o);
json to_json(const CurveRun& r);
json to_json(const SweepEntry& e);
/* Survivors only unless all_entries. */
json to_json(const LocalSweep& s, bool all_entries = false);
json to_json(const Eq5Row& r);
json to_json(const LiftRow& r);
json to_json(const PipelineReport& r);

json claims_json(const std::vector<Claim>& claims);
/* Two-space indented, trailing newline. */
std::string dump(const json& j);

}  // namespace gfe::pipeline
