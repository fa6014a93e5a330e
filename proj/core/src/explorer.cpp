#include "ittm/explorer.hpp"

#include <deque>

#include "ittm/errors.hpp"

namespace ittm {

std::unique_ptr<TreeNode> expand_tree(const Program& p, const BitStream& input,
                                      uint32_t depth, uint64_t node_cap) {
  auto root = std::make_unique<TreeNode>();
  root->snapshot = initial_snapshot(p, input);
  uint64_t nodes = 1;
  std::deque<TreeNode*> frontier{root.get()};
  for (uint32_t level = 0; level < depth; ++level) {
    std::deque<TreeNode*> next;
    for (TreeNode* node : frontier) {
      if (is_halting(node->snapshot)) {
        node->halted = true;
        continue;
      }
      auto succs = successors(p, node->snapshot);
      if (succs.empty()) {
        node->stuck = true;
        continue;
      }
      for (uint32_t i = 0; i < succs.size(); ++i) {
        if (++nodes > node_cap)
          throw Error(ErrorKind::TreeTooLarge,
                      "computation tree exceeds node cap of " +
                          std::to_string(node_cap));
        auto child = std::make_unique<TreeNode>();
        child->choice_prefix = node->choice_prefix;
        child->choice_prefix.push_back(i);
        child->snapshot = apply_instruction(p, node->snapshot, succs[i]);
        child->halted = is_halting(child->snapshot);
        next.push_back(child.get());
        node->children.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  return root;
}

std::vector<const TreeNode*> tree_leaves(const TreeNode& root) {
  std::vector<const TreeNode*> out;
  std::deque<const TreeNode*> queue{&root};
  while (!queue.empty()) {
    const TreeNode* n = queue.front();
    queue.pop_front();
    if (n->children.empty()) out.push_back(n);
    for (const auto& c : n->children) queue.push_back(c.get());
  }
  return out;
}

std::vector<PathResult> explore(const Program& p, const BitStream& input,
                                const PolicyBounds& bounds,
                                const RunBudget& budget,
                                const RunOptions& options) {
  auto policies =
      enumerate_policies(p.branching_width(), bounds.max_script, bounds.max_tail);
  std::vector<PathResult> results;
  results.reserve(policies.size());
  for (const auto& policy : policies) {
    RunResult run = run_transfinite(p, input, policy, budget, options);
    PathResult pr;
    pr.policy = policy;
    if (const auto* h = std::get_if<Halted>(&run.outcome)) {
      pr.halt_stage = h->final_snap.stage;
      pr.output_bit = bit_at(h->final_snap.tapes.output, 1);
    }
    pr.outcome = std::move(run.outcome);
    results.push_back(std::move(pr));
  }
  return results;
}

RecognitionResult recognizes(const Program& p, const BitStream& input,
                             const PolicyBounds& bounds,
                             const RunBudget& budget) {
  RunOptions options;
  options.collect_trace = false;
  for (const auto& pr : explore(p, input, bounds, budget, options))
    if (pr.output_bit && *pr.output_bit == 1) return Accept{pr.policy};
  return NoWitnessFound{};
}

RecognitionResult co_recognizes(const Program& p, const BitStream& input,
                                const PolicyBounds& bounds,
                                const RunBudget& budget) {
  // Same bounded search; the caller supplies a recognizer for the
  // complement, so an Accept here labels membership in the complement.
  return recognizes(p, input, bounds, budget);
}

}  // namespace ittm
