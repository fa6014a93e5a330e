#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ittm/semantics.hpp"

namespace ittm {

// One node of the computation tree (Definition: sequences ordered by initial
// segment). Children are keyed by the successor index taken.
struct TreeNode {
  std::vector<uint32_t> choice_prefix;
  Snapshot snapshot;
  bool halted = false;
  bool stuck = false;
  std::vector<std::unique_ptr<TreeNode>> children;  // child i took index i
};

inline constexpr uint64_t kDefaultNodeCap = 1u << 20;

// Breadth-first materialization of all choice prefixes up to `depth`
// successor steps. Halted/stuck nodes are leaves. Throws TreeTooLarge when
// the node count would exceed `node_cap`.
std::unique_ptr<TreeNode> expand_tree(const Program& p, const BitStream& input,
                                      uint32_t depth,
                                      uint64_t node_cap = kDefaultNodeCap);

// Leaves at exactly `depth` (plus earlier halted/stuck leaves if
// include_terminal is set).
std::vector<const TreeNode*> tree_leaves(const TreeNode& root);

struct PolicyBounds {
  uint32_t max_script = 4;
  uint32_t max_tail = 3;
};

struct PathResult {
  ChoicePolicy policy;
  RunOutcome outcome;
  std::optional<Ordinal> halt_stage;  // present iff outcome is Halted
  std::optional<int> output_bit;      // cell 1 of output tape at halt
};

// run_transfinite for every enumerated policy, in canonical policy order.
std::vector<PathResult> explore(const Program& p, const BitStream& input,
                                const PolicyBounds& bounds,
                                const RunBudget& budget,
                                const RunOptions& options = {});

struct Accept { ChoicePolicy witness; };
struct NoWitnessFound {};
using RecognitionResult = std::variant<Accept, NoWitnessFound>;

// Accept iff some explored path halts with output 1 (cell 1 of the output
// tape). NoWitnessFound is *not* a proof of non-membership: the search is
// bounded while the true predicate ranges over all computation sequences.
RecognitionResult recognizes(const Program& p, const BitStream& input,
                             const PolicyBounds& bounds,
                             const RunBudget& budget);

// Same search; the program is read as a recognizer for the complement, so
// Accept means "in the complement".
RecognitionResult co_recognizes(const Program& p, const BitStream& input,
                                const PolicyBounds& bounds,
                                const RunBudget& budget);

}  // namespace ittm
