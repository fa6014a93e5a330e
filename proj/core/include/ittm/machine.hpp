#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ittm/bitstream.hpp"
#include "ittm/ordinal.hpp"

namespace ittm {

enum class StateKind { Start, Limit, Halt, Ordinary };

struct ProgramState {
  std::string id;
  StateKind kind = StateKind::Ordinary;
};

// One symbol per tape, '0'/'1' match that bit, '*' matches either.
struct ReadPattern {
  char input = '*';
  char scratch = '*';
  char output = '*';

  bool matches(int in, int scr, int out) const;
  int wildcards() const;
  std::string text() const;
  friend bool operator==(const ReadPattern&, const ReadPattern&) = default;
};

enum class Move { LeftMove, RightMove };

// '0'/'1' write that bit, '-' keeps the cell.
struct Instruction {
  char write_input = '-';
  char write_scratch = '-';
  char write_output = '-';
  Move move = Move::RightMove;
  uint32_t next_state = 0;  // index into Program::states

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

struct Rule {
  uint32_t state = 0;  // index into Program::states
  ReadPattern pattern;
  Instruction instruction;
};

// An NITTM program: a finite state set and a transition *relation*. Several
// rules may fire from the same (state, read); their order is the
// nondeterministic choice order (more specific patterns first, then file
// order).
class Program {
 public:
  Program(std::string name, std::vector<ProgramState> states,
          std::vector<Rule> rules);

  const std::string& name() const { return name_; }
  const std::vector<ProgramState>& states() const { return states_; }
  const std::vector<Rule>& rules() const { return rules_; }

  uint32_t start_state() const { return start_; }
  uint32_t limit_state() const { return limit_; }
  uint32_t halt_state() const { return halt_; }

  std::optional<uint32_t> state_index(std::string_view id) const;
  const ProgramState& state(uint32_t idx) const { return states_[idx]; }

  // Choice-ordered rule indices for one state (specific before `any`,
  // then file order); successors() filters them against the actual read.
  const std::vector<uint32_t>& rules_for_state(uint32_t state) const;
  bool has_limit_rules() const { return !rules_for_state(limit_).empty(); }

  // Max number of alternatives over all (state, read-triple) pairs; at
  // least 1. Policies use choice indices 0..width-1.
  uint32_t branching_width() const;

 private:
  std::string name_;
  std::vector<ProgramState> states_;
  std::vector<Rule> rules_;
  std::vector<std::vector<uint32_t>> by_state_;
  uint32_t start_ = 0, limit_ = 0, halt_ = 0;
};

// The complete instantaneous description of a run, plus its transfinite
// stage. Immutable value.
struct Snapshot {
  std::string program;
  TapeTriple tapes;
  uint64_t head = 1;
  std::string state;
  StateKind state_kind = StateKind::Start;
  Ordinal stage;
};

bool snapshot_equal(const Snapshot& a, const Snapshot& b);

Snapshot initial_snapshot(const Program& p, const BitStream& input);

// All instructions the relation offers at snap, in choice order.
std::vector<Instruction> successors(const Program& p, const Snapshot& snap);
Snapshot apply_instruction(const Program& p, const Snapshot& snap,
                           const Instruction& instr);
bool is_halting(const Snapshot& snap);

// Line-oriented DSL:
//   program <name>
//   states start=<id> limit=<id> halt=<id> [others: <id> ...]
//   rule <state> <i><s><o> -> <wi><ws><wo> <L|R> <state>
// `#` starts a comment. Repeated rule lines are nondeterministic
// alternatives.
Program parse_program(std::string_view text);
std::string render_program(const Program& p);

}  // namespace ittm
