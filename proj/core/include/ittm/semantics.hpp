#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ittm/machine.hpp"
#include "ittm/policy.hpp"

namespace ittm {

struct RunBudget {
  uint64_t max_successor_steps_per_block = 100000;
  uint32_t max_limit_jumps = 4;
};

// Default lookback cap for recurrence detection: certificates with period
// beyond this are not searched for.
inline constexpr uint64_t kDefaultCertWindow = 4096;

// Sound finite witness that the run repeats forever from step m on: the
// machine state recurs at step n with the head shifted right by d, each
// tape's content from the cycle's leftmost visited cell onward is the step-m
// content shifted by d, and the choice policy consumes whole tail cycles.
// With d = 0 the two configurations are identical. Step indices are
// block-local (the block starts at 0).
struct RecurrenceCertificate {
  uint64_t m = 0;
  uint64_t n = 0;
  uint64_t shift = 0;  // d
  uint64_t period() const { return n - m; }
};

// What run_block retains about a block; enough to validate a certificate
// and evaluate the limit jump without storing every step.
struct StepHistory {
  Snapshot block_start;       // snapshot at block step 0
  Snapshot at_m;              // snapshot at certificate step m
  uint64_t cursor_at_m = 0;   // policy entries consumed by step m
  Snapshot at_n;              // snapshot at certificate step n
  uint64_t cursor_at_n = 0;
  uint64_t min_head = 1;      // over steps [m..n]
  uint64_t max_head = 1;      // over steps [m..n]
  bool wrote_in_cycle = false;  // any tape write during (m..n]
  ChoicePolicy policy;        // resolver the certified cycle ran under
};

enum class TraceEventKind { Step, Limit, Halt, Stuck, Budget, AccelFailed, NonHalting };

struct TraceEvent {
  Snapshot snap;
  std::optional<uint32_t> choice;  // branch index taken to reach snap
  TraceEventKind kind = TraceEventKind::Step;
};

using TraceSink = std::function<void(const TraceEvent&)>;

struct Halted { Snapshot final_snap; };
struct Stuck { Snapshot at; std::string reason; };
struct BudgetExceeded { Snapshot last; };
struct AccelerationFailed { Snapshot last; std::string reason; };
// A certificate fired at top level but the program has no limit-state rules;
// the run provably continues forever. Carries the limit snapshot it reached.
struct NonHalting { Snapshot limit_snap; RecurrenceCertificate cert; };

using RunOutcome =
    std::variant<Halted, Stuck, BudgetExceeded, AccelerationFailed, NonHalting>;

const Snapshot& outcome_snapshot(const RunOutcome& o);
std::string outcome_label(const RunOutcome& o);  // halted|stuck|budget|accel_failed|nonhalting

struct RunOptions {
  bool collect_trace = true;
  TraceSink sink;  // optional streaming sink, called as events are produced
  uint64_t cert_window = kDefaultCertWindow;
};

struct RunResult {
  RunOutcome outcome;
  std::vector<TraceEvent> trace;
};

// One block of successor steps: applies resolved instructions until the run
// halts, gets stuck, certifies a recurrence, or exhausts the step budget.
struct BlockHalted { Snapshot final_snap; };
struct BlockStuck { Snapshot at; std::string reason; };
struct BlockCertificate { RecurrenceCertificate cert; StepHistory history; };
struct BlockBudget { Snapshot last; };
struct BlockAccelFailed { Snapshot last; std::string reason; };
using BlockResult = std::variant<BlockHalted, BlockStuck, BlockCertificate,
                                 BlockBudget, BlockAccelFailed>;

BlockResult run_block(const Program& p, const Snapshot& start,
                      PolicyCursor& cursor, const RunBudget& budget,
                      const RunOptions& options = {},
                      std::vector<TraceEvent>* trace = nullptr);

// Evaluates the limsup rule exactly: limit state, head 1, stage the least
// limit ordinal above the stage at m, and each tape the per-cell eventual
// value (for d > 0) or the per-cell "1 occurs in the cycle" value (d = 0).
Snapshot limit_jump(const Program& p, const RecurrenceCertificate& cert,
                    const StepHistory& history);

// The full transfinite run: alternates run_block and limit_jump up to
// budget.max_limit_jumps.
RunResult run_transfinite(const Program& p, const BitStream& input,
                          const ChoicePolicy& policy, const RunBudget& budget,
                          const RunOptions& options = {});
// Same, from an explicit initial snapshot (pre-loaded scratch etc.).
RunResult run_transfinite_from(const Program& p, Snapshot initial,
                               const ChoicePolicy& policy,
                               const RunBudget& budget,
                               const RunOptions& options = {});

}  // namespace ittm
