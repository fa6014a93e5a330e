#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ittm {

// Finitely-described resolution of nondeterminism: a finite script of choice
// indices followed by a periodic tail. At a branch point with k alternatives
// the supplied index is taken modulo k, so every policy is total.
struct ChoicePolicy {
  std::vector<uint32_t> script;
  std::vector<uint32_t> tail;  // nonempty

  friend bool operator==(const ChoicePolicy&, const ChoicePolicy&) = default;
};

// The index consumed at the n-th branch point (0-based), before the modulo.
uint32_t policy_entry(const ChoicePolicy& p, uint64_t n);

// Minimal (script, tail) generating the same index sequence: primitive tail,
// script suffix absorbed into a rotation of the tail.
ChoicePolicy canonicalize_policy(const ChoicePolicy& p);

// Canonical order: (|script|, script lex, |tail|, tail lex).
bool policy_less(const ChoicePolicy& a, const ChoicePolicy& b);

// All canonical policies over indices 0..width-1 with |script| <= max_script
// and 1 <= |tail| <= max_tail, deduplicated, in canonical order.
std::vector<ChoicePolicy> enumerate_policies(uint32_t width,
                                             uint32_t max_script,
                                             uint32_t max_tail);

// Consumes policy entries; one entry per genuine branch point (>= 2
// alternatives). Deterministic stretches do not advance the cursor.
class PolicyCursor {
 public:
  explicit PolicyCursor(const ChoicePolicy& policy)
      : policy_(&policy), consumed_(0) {}
  PolicyCursor(const ChoicePolicy& policy, uint64_t consumed)
      : policy_(&policy), consumed_(consumed) {}

  uint32_t choose(uint32_t alternatives);
  uint64_t consumed() const { return consumed_; }
  const ChoicePolicy& policy() const { return *policy_; }

 private:
  const ChoicePolicy* policy_;
  uint64_t consumed_;
};

// True when a run segment whose cursor went from `at_m` to `at_n` consumes
// the same entries every time it repeats: either nothing was consumed, or
// the segment lies in the tail and spans a whole number of tail cycles.
bool cursor_aligned(const ChoicePolicy& p, uint64_t at_m, uint64_t at_n);

// CLI grammar: `script=<digits>,tail=<digits>` | `tail=<digits>` |
// `script=<digits>` (tail defaults to 0). Digits are single-character
// choice indices.
ChoicePolicy parse_policy_spec(std::string_view text);
std::string render_policy_spec(const ChoicePolicy& p);

}  // namespace ittm
