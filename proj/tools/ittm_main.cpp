// ittm: run, explore and inspect nondeterministic infinite time Turing
// machine programs from the command line.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "ittm/coding.hpp"
#include "ittm/errors.hpp"
#include "ittm/explorer.hpp"
#include "ittm/json_io.hpp"
#include "ittm/programs.hpp"
#include "ittm/semantics.hpp"

namespace {

using namespace ittm;

// Exit codes: 0 halted with output 1, 1 halted with output 0,
// 2 budget/acceleration/nonhalting, 3 usage, parse or stuck errors.
constexpr int kExitAccept = 0;
constexpr int kExitRejected = 1;
constexpr int kExitResource = 2;
constexpr int kExitError = 3;

Program load_program(const std::string& spec) {
  for (const auto& name : sample_names())
    if (spec == name || (spec.rfind("guess-check:", 0) == 0 &&
                         name.rfind("guess-check:", 0) == 0))
      return sample_program(spec);
  std::ifstream in(spec);
  if (!in)
    throw Error(ErrorKind::Usage,
                "no sample or readable program file named '" + spec + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

int outcome_exit_code(const RunOutcome& outcome) {
  if (const auto* h = std::get_if<Halted>(&outcome))
    return bit_at(h->final_snap.tapes.output, 1) == 1 ? kExitAccept
                                                      : kExitRejected;
  if (std::holds_alternative<Stuck>(outcome)) return kExitError;
  return kExitResource;
}

struct CommonFlags {
  std::string input_spec = "prefix=,period=0";
  uint64_t max_steps = 100000;
  uint32_t max_limits = 4;
  uint64_t window = kDefaultCertWindow;
};

void add_budget_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--input", flags.input_spec,
                  "input tape (prefix=<bits>,period=<bits> | support=... | "
                  "family=<a>x<b>^k[+support=...])");
  cmd->add_option("--max-steps", flags.max_steps,
                  "successor-step budget per block");
  cmd->add_option("--max-limits", flags.max_limits, "limit-jump budget");
  cmd->add_option("--window", flags.window,
                  "recurrence-certificate lookback cap");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"infinite time Turing machine workbench"};
  app.require_subcommand(1);

  std::string program_spec, policy_spec, format = "jsonl", scratch_spec;
  CommonFlags flags;
  PolicyBounds bounds;
  uint32_t depth = 10;
  uint64_t node_cap = kDefaultNodeCap;

  auto* run = app.add_subcommand("run", "run one policy-resolved branch");
  run->add_option("program", program_spec, "sample name or DSL file")
      ->required();
  add_budget_flags(run, flags);
  run->add_option("--policy", policy_spec,
                  "choice policy (script=<digits>,tail=<digits>)");
  run->add_option("--scratch", scratch_spec,
                  "preload the scratch tape (stream spec)");
  run->add_option("--format", format, "jsonl | summary")
      ->check(CLI::IsMember({"jsonl", "summary"}));

  auto* explore = app.add_subcommand("explore", "run every bounded policy");
  explore->add_option("program", program_spec)->required();
  add_budget_flags(explore, flags);
  explore->add_option("--script-len", bounds.max_script, "max script length");
  explore->add_option("--tail-len", bounds.max_tail, "max tail length");

  auto* tree = app.add_subcommand("tree", "materialize the computation tree");
  tree->add_option("program", program_spec)->required();
  add_budget_flags(tree, flags);
  tree->add_option("--depth", depth, "levels of successor steps");
  tree->add_option("--node-cap", node_cap, "node count guard");

  auto* samples = app.add_subcommand("samples", "bundled machines");
  auto* samples_list = samples->add_subcommand("list", "list sample names");
  auto* samples_emit = samples->add_subcommand("emit", "print sample DSL");
  std::string sample_name;
  samples_emit->add_option("name", sample_name)->required();

  auto* encode = app.add_subcommand("encode", "code snapshots and relations");
  auto* decode = app.add_subcommand("decode", "invert the coding");
  uint64_t pair_i = 0, pair_j = 0, field = 8;
  std::string rel_pairs, stream_spec, code_value, snap_head = "1",
              snap_state, snap_stage = "0";
  auto* enc_pair = encode->add_subcommand("pair", "2^i * 3^j");
  enc_pair->add_option("--i", pair_i)->required();
  enc_pair->add_option("--j", pair_j)->required();
  auto* enc_rel = encode->add_subcommand("relation", "relation -> stream");
  enc_rel->add_option("--pairs", rel_pairs, "e.g. (0,1),(2,0)")->required();
  auto* enc_snap = encode->add_subcommand("snapshot", "snapshot -> natural");
  enc_snap->add_option("--program", program_spec)->required();
  enc_snap->add_option("--input", flags.input_spec);
  enc_snap->add_option("--scratch", scratch_spec);
  std::string snap_output = "prefix=,period=0";
  enc_snap->add_option("--output", snap_output);
  enc_snap->add_option("--head", snap_head);
  enc_snap->add_option("--state", snap_state, "defaults to the start state");
  enc_snap->add_option("--stage", snap_stage, "CNF, e.g. w*1 + 2");

  auto* dec_rel = decode->add_subcommand("relation", "stream -> relation");
  dec_rel->add_option("--stream", stream_spec)->required();
  dec_rel->add_option("--field", field);
  auto* dec_snap = decode->add_subcommand("snapshot", "natural -> snapshot");
  dec_snap->add_option("value", code_value)->required();
  dec_snap->add_option("--program", program_spec)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      Program prog = load_program(program_spec);
      if (prog.branching_width() > 1 && policy_spec.empty())
        throw Error(ErrorKind::Usage,
                    "program branches; a --policy is required");
      ChoicePolicy policy{{}, {0}};
      if (!policy_spec.empty()) policy = parse_policy_spec(policy_spec);
      RunBudget budget{flags.max_steps, flags.max_limits};
      RunOptions options;
      options.collect_trace = false;
      options.cert_window = flags.window;
      if (format == "jsonl")
        options.sink = [](const TraceEvent& ev) {
          std::cout << trace_event_line(ev) << "\n";
        };
      Snapshot initial = initial_snapshot(prog, parse_stream_spec(flags.input_spec));
      if (!scratch_spec.empty())
        initial.tapes.scratch = parse_stream_spec(scratch_spec);
      RunResult result =
          run_transfinite_from(prog, std::move(initial), policy, budget, options);
      if (format == "summary") {
        const Snapshot& fin = outcome_snapshot(result.outcome);
        nlohmann::json j{{"outcome", outcome_label(result.outcome)},
                         {"stage", render_ordinal(fin.stage)},
                         {"state", fin.state},
                         {"output_bit", bit_at(fin.tapes.output, 1)}};
        std::cout << j.dump() << "\n";
      }
      return outcome_exit_code(result.outcome);
    }

    if (*explore) {
      Program prog = load_program(program_spec);
      RunBudget budget{flags.max_steps, flags.max_limits};
      RunOptions options;
      options.collect_trace = false;
      options.cert_window = flags.window;
      auto paths = ittm::explore(prog, parse_stream_spec(flags.input_spec),
                                 bounds, budget, options);
      nlohmann::json report = exploration_report(paths);
      std::cout << report.dump(2) << "\n";
      return report["summary"]["accepted"].get<bool>() ? kExitAccept
                                                       : kExitRejected;
    }

    if (*tree) {
      Program prog = load_program(program_spec);
      auto root = expand_tree(prog, parse_stream_spec(flags.input_spec), depth,
                              node_cap);
      std::cout << tree_to_json(*root).dump(2) << "\n";
      return kExitAccept;
    }

    if (*samples) {
      if (*samples_list) {
        for (const auto& name : sample_names()) std::cout << name << "\n";
        return kExitAccept;
      }
      if (*samples_emit) {
        std::cout << render_program(sample_program(sample_name));
        return kExitAccept;
      }
      throw Error(ErrorKind::Usage, "samples needs list or emit");
    }

    if (*encode) {
      if (*enc_pair) {
        std::cout << pos_of_pair(pair_i, pair_j) << "\n";
        return kExitAccept;
      }
      if (*enc_rel) {
        RelationCode rel;
        std::istringstream ss(rel_pairs);
        char c;
        uint64_t i, j;
        while (ss >> c && c == '(') {
          if (!(ss >> i >> c && c == ',' && ss >> j >> c && c == ')'))
            throw Error(ErrorKind::Usage, "bad --pairs syntax");
          rel.pairs.insert({i, j});
          ss >> c;  // optional comma
        }
        std::cout << render_stream_spec(encode_relation(rel)) << "\n";
        return kExitAccept;
      }
      if (*enc_snap) {
        Program prog = load_program(program_spec);
        ProgramRegistry reg;
        reg.add(prog);
        Snapshot snap = initial_snapshot(prog, parse_stream_spec(flags.input_spec));
        if (!scratch_spec.empty())
          snap.tapes.scratch = parse_stream_spec(scratch_spec);
        snap.tapes.output = parse_stream_spec(snap_output);
        snap.head = std::stoull(snap_head);
        if (!snap_state.empty()) {
          auto idx = prog.state_index(snap_state);
          if (!idx) throw Error(ErrorKind::Usage, "unknown --state");
          snap.state = snap_state;
          snap.state_kind = prog.state(*idx).kind;
        }
        snap.stage = parse_ordinal(snap_stage);
        std::cout << encode_snapshot(snap, reg).value.str() << "\n";
        return kExitAccept;
      }
      throw Error(ErrorKind::Usage, "encode needs pair, relation or snapshot");
    }

    if (*decode) {
      if (*dec_rel) {
        RelationCode rel =
            decode_relation(parse_stream_spec(stream_spec), field);
        std::string out = "{";
        bool first = true;
        // print in ascending code-position order, matching the stream
        std::vector<std::pair<uint64_t, std::pair<uint64_t, uint64_t>>> items;
        for (const auto& pr : rel.pairs)
          items.push_back({pos_of_pair(pr.first, pr.second), pr});
        std::sort(items.begin(), items.end());
        for (const auto& [pos, pr] : items) {
          if (!first) out += ",";
          out += "(" + std::to_string(pr.first) + "," +
                 std::to_string(pr.second) + ")";
          first = false;
        }
        out += "}";
        std::cout << out << "\n";
        return kExitAccept;
      }
      if (*dec_snap) {
        Program prog = load_program(program_spec);
        ProgramRegistry reg;
        reg.add(prog);
        SnapshotCode code{Natural(code_value)};
        Snapshot snap = decode_snapshot(code, reg);
        std::cout << snapshot_to_json(snap).dump() << "\n";
        return kExitAccept;
      }
      throw Error(ErrorKind::Usage, "decode needs relation or snapshot");
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
