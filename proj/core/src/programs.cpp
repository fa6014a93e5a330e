#include "ittm/programs.hpp"

#include <fstream>
#include <sstream>

#include "ittm/errors.hpp"
#include "machine_builder.hpp"

namespace ittm {

Program make_pc(PcTarget target) {
  std::string name = target == PcTarget::Scratch ? "pc-scratch" : "pc-output";
  MachineBuilder b(name, "s", "L", "h");
  std::string w0 = target == PcTarget::Scratch ? "-0-" : "--0";
  std::string w1 = target == PcTarget::Scratch ? "-1-" : "--1";
  // Both responses to every read: write 0 or write 1, move right, stay put.
  b.any("s", w0, Move::RightMove, "s");
  b.any("s", w1, Move::RightMove, "s");
  // The limit state halts on either read.
  b.any("L", "---", Move::RightMove, "h");
  return b.build();
}

CheckerSpec make_checker(Program program) {
  if (program.branching_width() > 1)
    throw Error(ErrorKind::InvalidChecker,
                "checker must be deterministic (the relation is a function)");
  return CheckerSpec{std::move(program)};
}

Program make_guess_and_check(const CheckerSpec& checker) {
  const Program& chk = checker.program;
  if (chk.branching_width() > 1)
    throw Error(ErrorKind::InvalidChecker,
                "checker must be deterministic (the relation is a function)");

  std::string name = "guess-check-" + chk.name();
  std::vector<ProgramState> states;
  std::vector<Rule> rules;

  // Composer states: guessing start, the shared limit, then the checker's
  // states renamed; the checker's halt becomes the whole program's halt.
  auto renamed = [&](uint32_t idx) {
    return "chk_" + chk.state(idx).id;
  };
  states.push_back({"guess", StateKind::Start});
  states.push_back({"lim", StateKind::Limit});
  uint32_t base = 2;
  std::vector<uint32_t> map(chk.states().size());
  for (uint32_t i = 0; i < chk.states().size(); ++i) {
    map[i] = base + i;
    StateKind kind = StateKind::Ordinary;
    if (chk.state(i).kind == StateKind::Halt) kind = StateKind::Halt;
    states.push_back({renamed(i), kind});
  }

  // Phase 1: write every possible real on the scratch tape.
  Rule guess0;
  guess0.state = 0;
  guess0.pattern = {'*', '*', '*'};
  guess0.instruction = {'-', '0', '-', Move::RightMove, 0};
  rules.push_back(guess0);
  Rule guess1 = guess0;
  guess1.instruction.write_scratch = '1';
  rules.push_back(guess1);

  // At the limit the response is the checker's own first move: copy the
  // checker's start-state rows onto the limit state.
  for (const Rule& r : chk.rules()) {
    Rule out = r;
    out.instruction.next_state = map[r.instruction.next_state];
    if (r.state == chk.start_state()) {
      Rule lim = out;
      lim.state = 1;
      rules.push_back(lim);
    }
    out.state = map[r.state];
    rules.push_back(out);
  }

  return Program(name, std::move(states), std::move(rules));
}

Program make_const_checker(int bit) {
  MachineBuilder b(bit ? "always-1" : "always-0", "s", "L", "h");
  b.any("s", bit ? "--1" : "--0", Move::RightMove, "h");
  return b.build();
}

Program make_match_input_checker() {
  // Output 1 iff scratch cell 1 equals input cell 1. Head starts at cell 1.
  MachineBuilder b("match-cell1", "s", "L", "h");
  b.rule("s", "00*", "--1", Move::RightMove, "h");
  b.rule("s", "11*", "--1", Move::RightMove, "h");
  b.rule("s", "01*", "--0", Move::RightMove, "h");
  b.rule("s", "10*", "--0", Move::RightMove, "h");
  return b.build();
}

Program make_word_checker(const std::string& word) {
  for (char c : word)
    if (c != '0' && c != '1')
      throw Error(ErrorKind::Parse, "word must consist of 0/1 bits");
  if (word.empty())
    throw Error(ErrorKind::Parse, "word must be nonempty");
  MachineBuilder b("word-" + word, "s", "L", "h");
  size_t k = word.size();
  // Match scratch cells 1..k against the word, then return to cell 1 and
  // raise the output flag. Any mismatch halts with the output still 0.
  auto match_state = [&](size_t i) {
    return i == 0 ? std::string("s") : "m" + std::to_string(i);
  };
  for (size_t i = 0; i < k; ++i) {
    char expect = word[i];
    char other = expect == '0' ? '1' : '0';
    std::string pat_ok = "*?*", pat_bad = "*?*";
    pat_ok[1] = expect;
    pat_bad[1] = other;
    std::string next = i + 1 == k ? "b0" : match_state(i + 1);
    b.rule(match_state(i), pat_ok, "---", Move::RightMove, next);
    b.rule(match_state(i), pat_bad, "---", Move::RightMove, "h");
  }
  // Walk back from cell k+1 to cell 1 (k left moves), write output 1, halt.
  std::string cur = "b0";
  for (size_t i = 0; i < k; ++i) {
    std::string next = "b" + std::to_string(i + 1);
    b.any(cur, "---", Move::LeftMove, next);
    cur = next;
  }
  b.any(cur, "--1", Move::RightMove, "h");
  return b.build();
}

std::vector<std::string> sample_names() {
  return {"pc-scratch", "pc-output", "guess-check:<checker-file>",
          "count-through", "codex"};
}

Program sample_program(const std::string& name) {
  if (name == "pc-scratch") return make_pc(PcTarget::Scratch);
  if (name == "pc-output") return make_pc(PcTarget::Output);
  if (name == "count-through") return make_count_through();
  if (name == "codex") return make_codex_checker();
  if (name.rfind("guess-check:", 0) == 0) {
    std::string path = name.substr(12);
    std::ifstream in(path);
    if (!in)
      throw Error(ErrorKind::Usage, "cannot open checker file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return make_guess_and_check(make_checker(parse_program(ss.str())));
  }
  throw Error(ErrorKind::Usage, "unknown sample program " + name);
}

}  // namespace ittm
