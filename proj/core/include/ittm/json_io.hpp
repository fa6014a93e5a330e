#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "ittm/explorer.hpp"
#include "ittm/semantics.hpp"

namespace ittm {

nlohmann::json stream_to_json(const BitStream& s);
nlohmann::json snapshot_to_json(const Snapshot& snap);
// One JSONL trace record:
// {"stage":"<CNF>","state":"<id>","head":n,"choice":i|null,
//  "tapes":{"input":...,"scratch":...,"output":...},"event":"step|limit|halt|..."}
nlohmann::json trace_event_to_json(const TraceEvent& ev);
std::string trace_event_line(const TraceEvent& ev);

nlohmann::json policy_to_json(const ChoicePolicy& p);
nlohmann::json path_result_to_json(const PathResult& pr);
// {"paths":[...],"summary":{"accepted":bool,"witness":...}}
nlohmann::json exploration_report(const std::vector<PathResult>& paths);

nlohmann::json tree_to_json(const TreeNode& node);

}  // namespace ittm
