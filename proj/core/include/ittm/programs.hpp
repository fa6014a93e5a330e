#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ittm/machine.hpp"

namespace ittm {

enum class PcTarget { Scratch, Output };

// The branching writer: from the start state, on any read, either write 0 or
// write 1 on the target tape and move right; the limit state halts. Its
// computation tree contains the full binary tree.
Program make_pc(PcTarget target);

// A deterministic program meant to read input+scratch and halt with output
// 0/1 after finitely many steps.
struct CheckerSpec {
  Program program;
};
// Validates determinism (the relation is a function).
CheckerSpec make_checker(Program program);

// The guess-and-check composer: phase 1 nondeterministically writes a real
// on the scratch tape; at the limit the renamed checker takes over. A path
// accepts iff the checker halts with output 1 on (input, guessed scratch).
Program make_guess_and_check(const CheckerSpec& checker);

// Checker helpers used by tests and the CLI samples.
Program make_const_checker(int bit);                  // always halt with output=bit
Program make_match_input_checker();                   // output 1 iff scratch[1]==input[1]
Program make_word_checker(const std::string& word);   // output 1 iff scratch[1..k]==word

// The well-order checker over relation codes (1s at 2^i*3^j): copies the
// relation to scratch, validates it is a finite strict linear order by
// guess-and-revise least-element search, erases least elements one round at
// a time, and halts with output 1 when the relation is empty, 0 on any
// violation. Elements above max_element are rejected as out of the field
// bound.
Program make_count_through(uint32_t max_element = 15);

// Verifies that the scratch tape holds a member of the family selected by
// the countable index (1s exactly at 6^(k*n), k >= 1), up to the finite
// frontier. Output 1 on success within the frontier, 0 on a mismatch.
Program make_codex_checker(uint64_t frontier = 10000);

// Bundled sample registry for the CLI.
std::vector<std::string> sample_names();
// Name as in sample_names(); "guess-check:<file>" composes the checker
// program parsed from the file's DSL text.
Program sample_program(const std::string& name);

}  // namespace ittm
