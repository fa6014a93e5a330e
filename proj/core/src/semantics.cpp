#include "ittm/semantics.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>

#include "ittm/errors.hpp"

namespace ittm {

const Snapshot& outcome_snapshot(const RunOutcome& o) {
  return std::visit(
      [](const auto& v) -> const Snapshot& {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Halted>) return v.final_snap;
        else if constexpr (std::is_same_v<T, Stuck>) return v.at;
        else if constexpr (std::is_same_v<T, BudgetExceeded>) return v.last;
        else if constexpr (std::is_same_v<T, AccelerationFailed>) return v.last;
        else return v.limit_snap;
      },
      o);
}

std::string outcome_label(const RunOutcome& o) {
  if (std::holds_alternative<Halted>(o)) return "halted";
  if (std::holds_alternative<Stuck>(o)) return "stuck";
  if (std::holds_alternative<BudgetExceeded>(o)) return "budget";
  if (std::holds_alternative<AccelerationFailed>(o)) return "accel_failed";
  return "nonhalting";
}

namespace {

// Bound on exact-comparison work per certificate candidate. Exceeding it
// rejects the candidate (sound: a rejected candidate only delays detection).
constexpr size_t kCompareEffort = 4096;

// Mutable tape for the stepping loop. Periodic tapes hold a materialized
// region plus the periodic tail; for single-character tails the positions
// deviating from the tail bit are indexed for fast recurrence checks.
struct WorkTape {
  bool query = false;
  BitStream source;  // query descriptor when query == true
  std::string cells;  // cells[i] is position i+1
  std::string tail = "0";
  std::set<uint64_t> deviants;  // only when tail.size() == 1

  void init(const BitStream& s) {
    // Finite-support streams canonicalize to periodic form and become
    // writable; only geometric descriptors stay query-form.
    BitStream c = canonicalize(s);
    if (!c.is_periodic()) {
      query = true;
      source = c;
      return;
    }
    query = false;
    const auto& p = c.as_periodic();
    cells = p.prefix;
    tail = p.period;
    deviants.clear();
    if (tail.size() == 1)
      for (size_t i = 0; i < cells.size(); ++i)
        if (cells[i] != tail[0]) deviants.insert(i + 1);
  }

  int at(uint64_t pos) const {
    if (query) return bit_at(source, pos);
    if (pos <= cells.size()) return cells[pos - 1] - '0';
    return tail[(pos - cells.size() - 1) % tail.size()] - '0';
  }

  void ensure(uint64_t pos) {
    if (pos <= cells.size()) return;
    uint64_t need = pos - cells.size();
    uint64_t rot = need % tail.size();
    cells.reserve(pos);
    for (uint64_t i = 0; i < need; ++i) cells += tail[i % tail.size()];
    if (rot) tail = tail.substr(rot) + tail.substr(0, rot);
  }

  // Returns false (untouched) when the write is a no-op.
  bool write(uint64_t pos, int bit) {
    if (query)
      throw Error(ErrorKind::ReadOnlyStream,
                  "program wrote to its read-only query input tape");
    if (at(pos) == bit) return false;
    ensure(pos);
    cells[pos - 1] = static_cast<char>('0' + bit);
    if (tail.size() == 1) {
      if (cells[pos - 1] != tail[0]) deviants.insert(pos);
      else deviants.erase(pos);
    }
    return true;
  }

  BitStream to_stream() const {
    if (query) return source;
    return canonicalize(BitStream::periodic(cells, tail));
  }
};

struct TapeRef {
  bool query = false;
  std::string tail = "0";
  std::vector<uint64_t> deviants;  // sorted; only when tail.size() == 1
  BitStream stream;                // canonical

  void capture(const WorkTape& t) {
    query = t.query;
    stream = t.to_stream();
    tail = t.tail;
    deviants.assign(t.deviants.begin(), t.deviants.end());
  }
};

// Exact test: ref(c) == cur(c + d) for all c >= from, within the effort cap.
bool tape_agrees_shifted(const TapeRef& ref, const WorkTape& cur, uint64_t d,
                         uint64_t from, bool* effort_exceeded) {
  if (ref.tail.size() == 1 && cur.tail.size() == 1 && ref.tail == cur.tail) {
    auto lo = std::lower_bound(ref.deviants.begin(), ref.deviants.end(), from);
    auto it = cur.deviants.lower_bound(from + d);
    size_t effort = 0;
    while (true) {
      bool ref_end = lo == ref.deviants.end();
      bool cur_end = it == cur.deviants.end();
      if (ref_end && cur_end) return true;
      if (ref_end || cur_end) return false;
      if (*lo + d != *it) return false;
      ++lo; ++it;
      if (++effort > kCompareEffort) { *effort_exceeded = true; return false; }
    }
  }
  // General-tail fallback: compare over one combined period window past both
  // descriptions, capped.
  const BitStream ref_stream = ref.stream;
  uint64_t ref_pref = ref_stream.is_periodic() ? ref_stream.as_periodic().prefix.size() : 0;
  uint64_t ref_per = ref_stream.is_periodic() ? ref_stream.as_periodic().period.size() : 1;
  uint64_t cur_pref = cur.cells.size();
  uint64_t cur_per = cur.tail.size();
  uint64_t l = std::lcm(ref_per, cur_per);
  uint64_t hi = std::max<uint64_t>(ref_pref, cur_pref > d ? cur_pref - d : 0);
  uint64_t end = std::max(from, hi) + l;
  if (end - from > kCompareEffort) { *effort_exceeded = true; return false; }
  for (uint64_t c = from; c <= end; ++c)
    if (bit_at(ref_stream, c) != cur.at(c + d)) return false;
  return true;
}

bool tape_equal_to_ref(const TapeRef& ref, const WorkTape& cur,
                       bool* effort_exceeded) {
  if (ref.query || cur.query) {
    // Query tapes are never written, so they only ever equal themselves.
    return ref.query && cur.query;
  }
  if (ref.tail.size() == 1 && cur.tail.size() == 1) {
    if (ref.tail != cur.tail) return false;
    if (ref.deviants.size() != cur.deviants.size()) return false;
    return std::equal(ref.deviants.begin(), ref.deviants.end(),
                      cur.deviants.begin());
  }
  return tape_agrees_shifted(ref, cur, 0, 1, effort_exceeded);
}

struct Engine {
  const Program& prog;
  PolicyCursor& cursor;
  Ordinal base_stage;
  std::string program_name;

  WorkTape tapes[3];
  uint64_t head = 1;
  uint32_t state = 0;
  uint64_t step = 0;

  Snapshot materialize() const {
    Snapshot s;
    s.program = program_name;
    s.tapes = {tapes[0].to_stream(), tapes[1].to_stream(), tapes[2].to_stream()};
    s.head = head;
    s.state = prog.state(state).id;
    s.state_kind = prog.state(state).kind;
    s.stage = ord_add(base_stage, Ordinal::from_natural(step));
    return s;
  }

  void load(const Snapshot& snap) {
    program_name = snap.program;
    tapes[0].init(snap.tapes.input);
    tapes[1].init(snap.tapes.scratch);
    tapes[2].init(snap.tapes.output);
    head = snap.head;
    auto idx = prog.state_index(snap.state);
    if (!idx)
      throw Error(ErrorKind::UnknownState,
                  "snapshot state '" + snap.state + "' not in program");
    state = *idx;
    base_stage = snap.stage;
    step = 0;
  }

  // Matched rule indices at the current configuration, in choice order.
  void matched_rules(std::vector<uint32_t>& out) const {
    out.clear();
    int in = tapes[0].at(head);
    int scr = tapes[1].at(head);
    int out_bit = tapes[2].at(head);
    for (uint32_t r : prog.rules_for_state(state))
      if (prog.rules()[r].pattern.matches(in, scr, out_bit)) out.push_back(r);
  }

  struct StepEffect {
    bool wrote = false;
    bool clamped = false;
  };

  // Applies instruction; throws Error(ReadOnlyStream) on query writes.
  StepEffect apply(const Instruction& instr) {
    StepEffect eff;
    auto put = [&](int t, char w) {
      if (w != '-') eff.wrote |= tapes[t].write(head, w - '0');
    };
    put(0, instr.write_input);
    put(1, instr.write_scratch);
    put(2, instr.write_output);
    if (instr.move == Move::LeftMove) {
      if (head > 1) --head;
      else eff.clamped = true;
    } else {
      ++head;
    }
    state = instr.next_state;
    ++step;
    return eff;
  }
};

}  // namespace

BlockResult run_block(const Program& p, const Snapshot& start,
                      PolicyCursor& cursor, const RunBudget& budget,
                      const RunOptions& options,
                      std::vector<TraceEvent>* trace) {
  Engine eng{p, cursor, Ordinal(), std::string(), {}, 1, 0, 0};
  eng.load(start);

  const bool tracing = (options.collect_trace && trace) || options.sink;
  auto emit = [&](TraceEvent ev) {
    if (options.sink) options.sink(ev);
    if (options.collect_trace && trace) trace->push_back(std::move(ev));
  };

  // Reference configuration for recurrence detection (Brent's scheme: the
  // reference doubles forward so any eventual repetition is compared against
  // a reference inside the periodic regime).
  Snapshot ref_snap = start;
  TapeRef ref_tapes[3];
  for (int t = 0; t < 3; ++t) ref_tapes[t].capture(eng.tapes[t]);
  uint64_t ref_step = 0;
  uint64_t ref_cursor = cursor.consumed();
  uint32_t ref_state = eng.state;
  uint64_t ref_head = eng.head;
  int ref_reads[3] = {eng.tapes[0].at(eng.head), eng.tapes[1].at(eng.head),
                      eng.tapes[2].at(eng.head)};
  uint64_t next_reset = 8;

  // Aggregates over steps since the reference.
  uint64_t min_head = eng.head;
  uint64_t max_head = eng.head;
  bool wrote_since_ref = false;
  bool clamped_since_ref = false;

  bool accel_blocked = false;
  std::string accel_reason;

  std::vector<uint32_t> matches;
  while (true) {
    if (p.state(eng.state).kind == StateKind::Halt)
      return BlockHalted{eng.materialize()};

    eng.matched_rules(matches);
    if (matches.empty())
      return BlockStuck{eng.materialize(), "no applicable rule"};
    uint32_t idx = 0;
    if (matches.size() >= 2)
      idx = cursor.choose(static_cast<uint32_t>(matches.size()));
    const Instruction& instr = p.rules()[matches[idx]].instruction;

    Engine::StepEffect eff;
    try {
      eff = eng.apply(instr);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ReadOnlyStream)
        return BlockStuck{eng.materialize(), e.what()};
      throw;
    }
    wrote_since_ref |= eff.wrote;
    clamped_since_ref |= eff.clamped;
    min_head = std::min(min_head, eng.head);
    max_head = std::max(max_head, eng.head);

    if (tracing) {
      TraceEvent ev;
      ev.snap = eng.materialize();
      ev.choice = idx;
      ev.kind = p.state(eng.state).kind == StateKind::Halt
                    ? TraceEventKind::Halt
                    : TraceEventKind::Step;
      emit(std::move(ev));
    }
    if (p.state(eng.state).kind == StateKind::Halt)
      return BlockHalted{eng.materialize()};

    // Certificate candidate: current configuration against the reference.
    if (eng.state == ref_state && eng.head >= ref_head &&
        eng.step - ref_step <= options.cert_window &&
        cursor_aligned(cursor.policy(), ref_cursor, cursor.consumed())) {
      uint64_t d = eng.head - ref_head;
      bool ok = true;
      bool effort = false;
      if (d == 0) {
        for (int t = 0; t < 3 && ok; ++t)
          ok = tape_equal_to_ref(ref_tapes[t], eng.tapes[t], &effort);
      } else if (clamped_since_ref) {
        // A left move clamped at cell 1 inside the window; a shifted replay
        // would not clamp, so the certificate is unsound. Skip.
        ok = false;
      } else {
        for (int t = 0; t < 3 && ok; ++t) {
          if (ref_tapes[t].query || eng.tapes[t].query) {
            ok = false;
            accel_blocked = true;
            accel_reason =
                "shift comparison undecidable on query-form stream";
          } else {
            ok = tape_agrees_shifted(ref_tapes[t], eng.tapes[t], d, min_head,
                                     &effort);
          }
        }
        // The next replayed step must read what the reference step read;
        // implied by the shifted agreement, kept as a cheap sanity check.
        if (ok)
          ok = eng.tapes[0].at(eng.head) == ref_reads[0] &&
               eng.tapes[1].at(eng.head) == ref_reads[1] &&
               eng.tapes[2].at(eng.head) == ref_reads[2];
      }
      if (ok) {
        RecurrenceCertificate cert{ref_step, eng.step, d};
        StepHistory hist;
        hist.block_start = start;
        hist.at_m = ref_snap;
        hist.cursor_at_m = ref_cursor;
        hist.at_n = eng.materialize();
        hist.cursor_at_n = cursor.consumed();
        hist.min_head = min_head;
        hist.max_head = max_head;
        hist.wrote_in_cycle = wrote_since_ref;
        hist.policy = cursor.policy();
        return BlockCertificate{cert, std::move(hist)};
      }
    }

    if (eng.step >= next_reset) {
      ref_snap = eng.materialize();
      for (int t = 0; t < 3; ++t) ref_tapes[t].capture(eng.tapes[t]);
      ref_step = eng.step;
      ref_cursor = cursor.consumed();
      ref_state = eng.state;
      ref_head = eng.head;
      for (int t = 0; t < 3; ++t) ref_reads[t] = eng.tapes[t].at(eng.head);
      min_head = max_head = eng.head;
      wrote_since_ref = false;
      clamped_since_ref = false;
      next_reset *= 2;
    }

    if (eng.step >= budget.max_successor_steps_per_block) {
      if (accel_blocked)
        return BlockAccelFailed{eng.materialize(), accel_reason};
      return BlockBudget{eng.materialize()};
    }
  }
}

namespace {

// Deterministic replay used by limit evaluation: steps tapes/head/state with
// the given cursor, reporting each write. No recurrence search, no trace.
struct Replayer {
  const Program& prog;
  WorkTape tapes[3];
  uint64_t head;
  uint32_t state;
  PolicyCursor cursor;

  Replayer(const Program& p, const Snapshot& snap, const ChoicePolicy& policy,
           uint64_t consumed)
      : prog(p), cursor(policy, consumed) {
    tapes[0].init(snap.tapes.input);
    tapes[1].init(snap.tapes.scratch);
    tapes[2].init(snap.tapes.output);
    head = snap.head;
    auto idx = p.state_index(snap.state);
    if (!idx) throw Error(ErrorKind::UnknownState, "bad snapshot state");
    state = *idx;
  }

  template <typename OnWrite>
  void step(OnWrite&& on_write) {
    int in = tapes[0].at(head), scr = tapes[1].at(head), out = tapes[2].at(head);
    std::vector<uint32_t> matches;
    for (uint32_t r : prog.rules_for_state(state))
      if (prog.rules()[r].pattern.matches(in, scr, out)) matches.push_back(r);
    if (matches.empty())
      throw Error(ErrorKind::NoSuccessor,
                  "replay diverged: no applicable rule inside certified cycle");
    uint32_t idx = 0;
    if (matches.size() >= 2)
      idx = cursor.choose(static_cast<uint32_t>(matches.size()));
    const Instruction& instr = prog.rules()[matches[idx]].instruction;
    auto put = [&](int t, char w) {
      if (w == '-') return;
      tapes[t].write(head, w - '0');
      on_write(t, head, w - '0');  // no-op writes reported too
    };
    put(0, instr.write_input);
    put(1, instr.write_scratch);
    put(2, instr.write_output);
    if (instr.move == Move::LeftMove) { if (head > 1) --head; }
    else ++head;
    state = instr.next_state;
  }
};

}  // namespace

Snapshot limit_jump(const Program& p, const RecurrenceCertificate& cert,
                    const StepHistory& history) {
  Snapshot out;
  out.program = history.at_m.program;
  out.head = 1;
  out.state = p.state(p.limit_state()).id;
  out.state_kind = StateKind::Limit;
  out.stage = ord_next_limit(history.at_m.stage);

  uint64_t period = cert.period();

  if (cert.shift == 0) {
    // Exact loop: a cell's limsup is 1 iff it holds 1 at some step of [m, n).
    // The step-m value recurs every cycle, so only cells that are 0 at m and
    // receive a 1 during the cycle change.
    Replayer rep(p, history.at_m, history.policy, history.cursor_at_m);
    std::set<std::pair<int, uint64_t>> saw_one;
    for (uint64_t k = 0; k < period; ++k) {
      bool into_n = k + 1 == period;
      rep.step([&](int t, uint64_t pos, int bit) {
        // Writes into snapshot n fall outside [m, n); snapshot n equals
        // snapshot m anyway, so excluding them changes nothing.
        if (!into_n && bit == 1) saw_one.insert({t, pos});
      });
    }
    BitStream tapes_out[3] = {history.at_m.tapes.input,
                              history.at_m.tapes.scratch,
                              history.at_m.tapes.output};
    for (const auto& [t, pos] : saw_one)
      if (!tapes_out[t].is_query()) tapes_out[t] = write_bit(tapes_out[t], pos, 1);
    out.tapes = {canonicalize(tapes_out[0]), canonicalize(tapes_out[1]),
                 canonicalize(tapes_out[2])};
    return out;
  }

  // Rightward drift. Every cell is eventually abandoned by the moving
  // window, so each cell has an eventual value; beyond the frontier B the
  // eventual values repeat with period d.
  uint64_t d = cert.shift;
  uint64_t frontier = history.max_head;
  auto prefix_len = [](const BitStream& s) -> uint64_t {
    return s.is_periodic() ? s.as_periodic().prefix.size() : 0;
  };
  frontier = std::max(frontier, prefix_len(history.at_n.tapes.input));
  frontier = std::max(frontier, prefix_len(history.at_n.tapes.scratch));
  frontier = std::max(frontier, prefix_len(history.at_n.tapes.output));

  if (!history.wrote_in_cycle) {
    // The cycle writes nothing, so the tape never changes again.
    out.tapes = {canonicalize(history.at_n.tapes.input),
                 canonicalize(history.at_n.tapes.scratch),
                 canonicalize(history.at_n.tapes.output)};
    return out;
  }

  Replayer rep(p, history.at_n, history.policy, history.cursor_at_n);
  uint64_t lo0 = history.min_head;
  // Simulate whole cycles until every cell up to frontier + d is abandoned.
  uint64_t cycles = (frontier + d - std::min(frontier + d, lo0)) / d + 2;
  for (uint64_t c = 0; c < cycles; ++c) {
    uint64_t cycle_min = rep.head;
    for (uint64_t k = 0; k < period; ++k) {
      rep.step([](int, uint64_t, int) {});
      cycle_min = std::min(cycle_min, rep.head);
    }
    if (cycle_min > frontier + d) break;
  }
  BitStream result[3];
  for (int t = 0; t < 3; ++t) {
    std::string pre(frontier, '0');
    for (uint64_t c = 1; c <= frontier; ++c)
      pre[c - 1] = static_cast<char>('0' + rep.tapes[t].at(c));
    std::string per(d, '0');
    for (uint64_t c = 0; c < d; ++c)
      per[c] = static_cast<char>('0' + rep.tapes[t].at(frontier + 1 + c));
    result[t] = canonicalize(BitStream::periodic(std::move(pre), std::move(per)));
  }
  out.tapes = {result[0], result[1], result[2]};
  return out;
}

namespace {

RunResult run_impl(const Program& p, Snapshot snap, const ChoicePolicy& policy,
                   const RunBudget& budget, const RunOptions& options) {
  RunResult result;
  auto emit = [&](Snapshot s, std::optional<uint32_t> choice,
                  TraceEventKind kind) {
    TraceEvent ev{std::move(s), choice, kind};
    if (options.sink) options.sink(ev);
    if (options.collect_trace) result.trace.push_back(std::move(ev));
  };

  PolicyCursor cursor(policy);
  emit(snap, std::nullopt,
       is_halting(snap) ? TraceEventKind::Halt : TraceEventKind::Step);
  if (is_halting(snap)) {
    result.outcome = Halted{std::move(snap)};
    return result;
  }

  uint32_t jumps = 0;
  while (true) {
    BlockResult br = run_block(p, snap, cursor, budget, options,
                               options.collect_trace ? &result.trace : nullptr);
    if (auto* h = std::get_if<BlockHalted>(&br)) {
      result.outcome = Halted{h->final_snap};
      return result;
    }
    if (auto* s = std::get_if<BlockStuck>(&br)) {
      emit(s->at, std::nullopt, TraceEventKind::Stuck);
      result.outcome = Stuck{s->at, s->reason};
      return result;
    }
    if (auto* b = std::get_if<BlockBudget>(&br)) {
      emit(b->last, std::nullopt, TraceEventKind::Budget);
      result.outcome = BudgetExceeded{b->last};
      return result;
    }
    if (auto* a = std::get_if<BlockAccelFailed>(&br)) {
      emit(a->last, std::nullopt, TraceEventKind::AccelFailed);
      result.outcome = AccelerationFailed{a->last, a->reason};
      return result;
    }
    auto& c = std::get<BlockCertificate>(br);
    Snapshot limit = limit_jump(p, c.cert, c.history);
    if (!p.has_limit_rules()) {
      emit(limit, std::nullopt, TraceEventKind::Limit);
      emit(limit, std::nullopt, TraceEventKind::NonHalting);
      result.outcome = NonHalting{limit, c.cert};
      return result;
    }
    if (jumps >= budget.max_limit_jumps) {
      emit(c.history.at_n, std::nullopt, TraceEventKind::Budget);
      result.outcome = BudgetExceeded{c.history.at_n};
      return result;
    }
    ++jumps;
    emit(limit, std::nullopt, TraceEventKind::Limit);
    snap = std::move(limit);
  }
}

}  // namespace

RunResult run_transfinite(const Program& p, const BitStream& input,
                          const ChoicePolicy& policy, const RunBudget& budget,
                          const RunOptions& options) {
  return run_impl(p, initial_snapshot(p, input), policy, budget, options);
}

RunResult run_transfinite_from(const Program& p, Snapshot initial,
                               const ChoicePolicy& policy,
                               const RunBudget& budget,
                               const RunOptions& options) {
  return run_impl(p, std::move(initial), policy, budget, options);
}

}  // namespace ittm
