#include "ittm/machine.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "ittm/errors.hpp"

namespace ittm {

bool ReadPattern::matches(int in, int scr, int out) const {
  auto one = [](char pat, int bit) {
    return pat == '*' || pat - '0' == bit;
  };
  return one(input, in) && one(scratch, scr) && one(output, out);
}

int ReadPattern::wildcards() const {
  return (input == '*') + (scratch == '*') + (output == '*');
}

std::string ReadPattern::text() const { return {input, scratch, output}; }

Program::Program(std::string name, std::vector<ProgramState> states,
                 std::vector<Rule> rules)
    : name_(std::move(name)), states_(std::move(states)), rules_(std::move(rules)) {
  int starts = 0, limits = 0, halts = 0;
  for (uint32_t i = 0; i < states_.size(); ++i) {
    switch (states_[i].kind) {
      case StateKind::Start: start_ = i; ++starts; break;
      case StateKind::Limit: limit_ = i; ++limits; break;
      case StateKind::Halt: halt_ = i; ++halts; break;
      case StateKind::Ordinary: break;
    }
  }
  if (starts != 1 || limits != 1 || halts != 1)
    throw Error(ErrorKind::MissingDeclaration,
                "program needs exactly one start, limit and halt state");
  by_state_.resize(states_.size());
  for (uint32_t r = 0; r < rules_.size(); ++r) {
    if (rules_[r].state >= states_.size() ||
        rules_[r].instruction.next_state >= states_.size())
      throw Error(ErrorKind::UnknownState, "rule references unknown state");
    if (rules_[r].state == halt_)
      throw Error(ErrorKind::RuleFromHalt, "no rule may fire from the halt state");
    if (rules_[r].instruction.next_state == limit_)
      throw Error(ErrorKind::TargetsLimit,
                  "instructions may not target the limit state");
    by_state_[rules_[r].state].push_back(r);
  }
  // Specific patterns fire before `any` patterns; file order breaks ties.
  for (auto& bucket : by_state_)
    std::stable_sort(bucket.begin(), bucket.end(), [&](uint32_t a, uint32_t b) {
      return rules_[a].pattern.wildcards() < rules_[b].pattern.wildcards();
    });
}

std::optional<uint32_t> Program::state_index(std::string_view id) const {
  for (uint32_t i = 0; i < states_.size(); ++i)
    if (states_[i].id == id) return i;
  return std::nullopt;
}

const std::vector<uint32_t>& Program::rules_for_state(uint32_t state) const {
  return by_state_[state];
}

uint32_t Program::branching_width() const {
  uint32_t width = 1;
  for (uint32_t s = 0; s < states_.size(); ++s) {
    for (int in = 0; in < 2; ++in)
      for (int scr = 0; scr < 2; ++scr)
        for (int out = 0; out < 2; ++out) {
          uint32_t n = 0;
          for (uint32_t r : by_state_[s])
            if (rules_[r].pattern.matches(in, scr, out)) ++n;
          width = std::max(width, n);
        }
  }
  return width;
}

bool snapshot_equal(const Snapshot& a, const Snapshot& b) {
  return a.program == b.program && a.head == b.head && a.state == b.state &&
         a.stage == b.stage && canonical_equal(a.tapes.input, b.tapes.input) &&
         canonical_equal(a.tapes.scratch, b.tapes.scratch) &&
         canonical_equal(a.tapes.output, b.tapes.output);
}

Snapshot initial_snapshot(const Program& p, const BitStream& input) {
  Snapshot s;
  s.program = p.name();
  s.tapes = {input, BitStream::all_zero(), BitStream::all_zero()};
  s.head = 1;
  s.state = p.state(p.start_state()).id;
  s.state_kind = StateKind::Start;
  s.stage = Ordinal();
  return s;
}

std::vector<Instruction> successors(const Program& p, const Snapshot& snap) {
  if (snap.state_kind == StateKind::Halt)
    throw Error(ErrorKind::NoSuccessor, "halted snapshots have no successor");
  auto idx = p.state_index(snap.state);
  if (!idx)
    throw Error(ErrorKind::UnknownState,
                "snapshot state '" + snap.state + "' not in program");
  int in = bit_at(snap.tapes.input, snap.head);
  int scr = bit_at(snap.tapes.scratch, snap.head);
  int out = bit_at(snap.tapes.output, snap.head);
  std::vector<Instruction> result;
  for (uint32_t r : p.rules_for_state(*idx))
    if (p.rules()[r].pattern.matches(in, scr, out))
      result.push_back(p.rules()[r].instruction);
  return result;
}

Snapshot apply_instruction(const Program& p, const Snapshot& snap,
                           const Instruction& instr) {
  Snapshot next = snap;
  auto put = [&](BitStream& tape, char w) {
    if (w != '-') tape = write_bit(tape, snap.head, w - '0');
  };
  put(next.tapes.input, instr.write_input);
  put(next.tapes.scratch, instr.write_scratch);
  put(next.tapes.output, instr.write_output);
  if (instr.move == Move::LeftMove) {
    if (next.head > 1) --next.head;  // left edge stays put
  } else {
    ++next.head;
  }
  next.state = p.state(instr.next_state).id;
  next.state_kind = p.state(instr.next_state).kind;
  next.stage = ord_add(snap.stage, Ordinal::from_natural(1));
  return next;
}

bool is_halting(const Snapshot& snap) {
  return snap.state_kind == StateKind::Halt;
}

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
  std::vector<int> columns;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    ++lineno;
    Line out{lineno, {}, {}};
    size_t i = 0;
    while (i < line.size()) {
      if (line[i] == '#') break;
      if (std::isspace(static_cast<unsigned char>(line[i]))) { ++i; continue; }
      size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
             line[i] != '#')
        ++i;
      out.tokens.emplace_back(line.substr(start, i - start));
      out.columns.push_back(static_cast<int>(start) + 1);
    }
    if (!out.tokens.empty()) lines.push_back(std::move(out));
    if (eol == text.size()) break;
    pos = eol + 1;
  }
  return lines;
}

bool valid_id(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' &&
        c != '.')
      return false;
  return true;
}

}  // namespace

Program parse_program(std::string_view text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty program text", 1, 1);

  size_t li = 0;
  // program <name>
  if (lines[li].tokens[0] != "program" || lines[li].tokens.size() != 2)
    throw ParseError("expected `program <name>`", lines[li].number,
                     lines[li].columns[0]);
  std::string name = lines[li].tokens[1];
  if (!valid_id(name))
    throw ParseError("invalid program name", lines[li].number,
                     lines[li].columns[1]);
  ++li;

  // states start=<id> limit=<id> halt=<id> [others: <id> ...]
  if (li >= lines.size() || lines[li].tokens[0] != "states")
    throw ParseError("expected `states` declaration",
                     li < lines.size() ? lines[li].number : lines.back().number,
                     1, ErrorKind::MissingDeclaration);
  const Line& decl = lines[li];
  std::string start_id, limit_id, halt_id;
  std::vector<std::string> other_ids;
  bool in_others = false;
  for (size_t t = 1; t < decl.tokens.size(); ++t) {
    const std::string& tok = decl.tokens[t];
    if (tok == "others:") { in_others = true; continue; }
    if (in_others) {
      if (!valid_id(tok))
        throw ParseError("invalid state id `" + tok + "`", decl.number,
                         decl.columns[t]);
      other_ids.push_back(tok);
      continue;
    }
    auto grab = [&](const char* key, std::string& dst) {
      std::string prefix = std::string(key) + "=";
      if (tok.rfind(prefix, 0) != 0) return false;
      dst = tok.substr(prefix.size());
      if (!valid_id(dst))
        throw ParseError("invalid state id in `" + tok + "`", decl.number,
                         decl.columns[t]);
      return true;
    };
    if (!grab("start", start_id) && !grab("limit", limit_id) &&
        !grab("halt", halt_id))
      throw ParseError("unexpected token `" + tok + "` in states line",
                       decl.number, decl.columns[t]);
  }
  if (start_id.empty() || limit_id.empty() || halt_id.empty())
    throw ParseError("states line must declare start=, limit= and halt=",
                     decl.number, decl.columns[0],
                     ErrorKind::MissingDeclaration);
  ++li;

  std::vector<ProgramState> states;
  std::map<std::string, uint32_t> index;
  auto add_state = [&](const std::string& id, StateKind kind, int line, int col) {
    if (index.count(id))
      throw ParseError("duplicate state id `" + id + "`", line, col);
    index[id] = static_cast<uint32_t>(states.size());
    states.push_back({id, kind});
  };
  add_state(start_id, StateKind::Start, decl.number, 1);
  add_state(limit_id, StateKind::Limit, decl.number, 1);
  add_state(halt_id, StateKind::Halt, decl.number, 1);
  for (const auto& id : other_ids)
    add_state(id, StateKind::Ordinary, decl.number, 1);

  std::vector<Rule> rules;
  for (; li < lines.size(); ++li) {
    const Line& ln = lines[li];
    if (ln.tokens[0] != "rule")
      throw ParseError("expected `rule` line", ln.number, ln.columns[0]);
    if (ln.tokens.size() != 7 || ln.tokens[3] != "->")
      throw ParseError(
          "expected `rule <state> <iso> -> <wiso> <L|R> <state>`", ln.number,
          ln.columns[0]);
    auto state_at = [&](size_t t) -> uint32_t {
      auto it = index.find(ln.tokens[t]);
      if (it == index.end())
        throw ParseError("unknown state `" + ln.tokens[t] + "`", ln.number,
                         ln.columns[t], ErrorKind::UnknownState);
      return it->second;
    };
    Rule rule;
    rule.state = state_at(1);
    if (states[rule.state].kind == StateKind::Halt)
      throw ParseError("rules may not fire from the halt state", ln.number,
                       ln.columns[1], ErrorKind::RuleFromHalt);
    const std::string& pat = ln.tokens[2];
    if (pat.size() != 3 || pat.find_first_not_of("01*") != std::string::npos)
      throw ParseError("read pattern must be three of 0/1/*", ln.number,
                       ln.columns[2]);
    rule.pattern = {pat[0], pat[1], pat[2]};
    const std::string& wr = ln.tokens[4];
    if (wr.size() != 3 || wr.find_first_not_of("01-") != std::string::npos)
      throw ParseError("write triple must be three of 0/1/-", ln.number,
                       ln.columns[4]);
    rule.instruction.write_input = wr[0];
    rule.instruction.write_scratch = wr[1];
    rule.instruction.write_output = wr[2];
    if (ln.tokens[5] == "L") rule.instruction.move = Move::LeftMove;
    else if (ln.tokens[5] == "R") rule.instruction.move = Move::RightMove;
    else
      throw ParseError("move must be L or R", ln.number, ln.columns[5]);
    rule.instruction.next_state = state_at(6);
    if (states[rule.instruction.next_state].kind == StateKind::Limit)
      throw ParseError("instructions may not target the limit state",
                       ln.number, ln.columns[6], ErrorKind::TargetsLimit);
    rules.push_back(rule);
  }

  return Program(std::move(name), std::move(states), std::move(rules));
}

std::string render_program(const Program& p) {
  std::ostringstream out;
  out << "program " << p.name() << "\n";
  out << "states start=" << p.state(p.start_state()).id
      << " limit=" << p.state(p.limit_state()).id
      << " halt=" << p.state(p.halt_state()).id;
  bool first = true;
  for (const auto& st : p.states()) {
    if (st.kind != StateKind::Ordinary) continue;
    out << (first ? " others: " : " ") << st.id;
    first = false;
  }
  out << "\n";
  for (const auto& r : p.rules()) {
    const Instruction& i = r.instruction;
    out << "rule " << p.state(r.state).id << " " << r.pattern.text() << " -> "
        << i.write_input << i.write_scratch << i.write_output << " "
        << (i.move == Move::LeftMove ? "L" : "R") << " "
        << p.state(i.next_state).id << "\n";
  }
  return out.str();
}

}  // namespace ittm
