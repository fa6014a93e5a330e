#include "ittm/json_io.hpp"

#include <nlohmann/json.hpp>

namespace ittm {

using nlohmann::json;

json stream_to_json(const BitStream& s) {
  const auto& r = s.repr();
  if (const auto* p = std::get_if<PeriodicRepr>(&r))
    return json{{"kind", "periodic"}, {"prefix", p->prefix}, {"period", p->period}};
  if (const auto* f = std::get_if<SupportRepr>(&r))
    return json{{"kind", "support"}, {"positions", f->positions}};
  const auto& g = std::get<GeometricRepr>(r);
  json families = json::array();
  for (const auto& fam : g.families)
    families.push_back(json{{"a", fam.first}, {"b", fam.ratio}});
  return json{{"kind", "family"}, {"families", families}, {"support", g.support}};
}

json snapshot_to_json(const Snapshot& snap) {
  return json{
      {"program", snap.program},
      {"stage", render_ordinal(snap.stage)},
      {"state", snap.state},
      {"head", snap.head},
      {"tapes",
       {{"input", stream_to_json(snap.tapes.input)},
        {"scratch", stream_to_json(snap.tapes.scratch)},
        {"output", stream_to_json(snap.tapes.output)}}},
  };
}

namespace {

const char* event_name(TraceEventKind k) {
  switch (k) {
    case TraceEventKind::Step: return "step";
    case TraceEventKind::Limit: return "limit";
    case TraceEventKind::Halt: return "halt";
    case TraceEventKind::Stuck: return "stuck";
    case TraceEventKind::Budget: return "budget";
    case TraceEventKind::AccelFailed: return "accel_failed";
    case TraceEventKind::NonHalting: return "nonhalting";
  }
  return "step";
}

}  // namespace

json trace_event_to_json(const TraceEvent& ev) {
  json j{
      {"stage", render_ordinal(ev.snap.stage)},
      {"state", ev.snap.state},
      {"head", ev.snap.head},
      {"choice", ev.choice ? json(*ev.choice) : json(nullptr)},
      {"tapes",
       {{"input", stream_to_json(ev.snap.tapes.input)},
        {"scratch", stream_to_json(ev.snap.tapes.scratch)},
        {"output", stream_to_json(ev.snap.tapes.output)}}},
      {"event", event_name(ev.kind)},
  };
  return j;
}

std::string trace_event_line(const TraceEvent& ev) {
  return trace_event_to_json(ev).dump();
}

json policy_to_json(const ChoicePolicy& p) {
  return json{{"script", p.script}, {"tail", p.tail}};
}

json path_result_to_json(const PathResult& pr) {
  json j{
      {"policy", policy_to_json(pr.policy)},
      {"outcome", outcome_label(pr.outcome)},
      {"halt_stage",
       pr.halt_stage ? json(render_ordinal(*pr.halt_stage)) : json(nullptr)},
      {"output_bit", pr.output_bit ? json(*pr.output_bit) : json(nullptr)},
  };
  return j;
}

json exploration_report(const std::vector<PathResult>& paths) {
  json arr = json::array();
  const PathResult* witness = nullptr;
  for (const auto& pr : paths) {
    arr.push_back(path_result_to_json(pr));
    if (!witness && pr.output_bit && *pr.output_bit == 1) witness = &pr;
  }
  json summary{{"accepted", witness != nullptr},
               {"witness", witness ? policy_to_json(witness->policy) : json(nullptr)}};
  return json{{"paths", arr}, {"summary", summary}};
}

json tree_to_json(const TreeNode& node) {
  json children = json::array();
  for (const auto& c : node.children) children.push_back(tree_to_json(*c));
  return json{
      {"prefix", node.choice_prefix},
      {"state", node.snapshot.state},
      {"head", node.snapshot.head},
      {"stage", render_ordinal(node.snapshot.stage)},
      {"halted", node.halted},
      {"stuck", node.stuck},
      {"tapes",
       {{"input", stream_to_json(node.snapshot.tapes.input)},
        {"scratch", stream_to_json(node.snapshot.tapes.scratch)},
        {"output", stream_to_json(node.snapshot.tapes.output)}}},
      {"children", children},
  };
}

}  // namespace ittm
