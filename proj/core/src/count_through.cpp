// Generator for the count-through well-order checker.
//
// The machine reads a relation code (1s at 2^i*3^j on the input tape),
// copies it to scratch, decodes every pair into an edge matrix kept on the
// output tape, then repeatedly finds the least element by guess-and-revise
// (appending a mark per guess change), verifies that element relates to
// every other live element, erases its row from the matrix and its 1s from
// the scratch copy, and halts with output 1 once the relation is empty.
// Violations (a guess cycle, a missing pair, a 1 at a non-pair position, an
// element beyond the field bound) halt with output 0.
//
// Output tape layout:
//   cell 1                     home mark while running; the answer at halt
//   cells 2,3                  phase bits for the limit dispatcher
//   cells 6,7                  mod-4 bits of the value under division
//   = 1 (mod 8), >= 9          bookmark marks for the position under decode
//   = 5 (mod 8), >= 13         guess-change marks, erased each round
//   = 7 (mod 8), >= 15         one mark at 15+8v: the current guess
//   = 0 (mod 4), >= 4          unary paint: value v = 4m+r as m marks
//   = 2 (mod 4), >= 10         slots (cell 10+4s): roster v at slot v,
//                              a separator, then the edge matrix with
//                              V+2 slots per row (anchor + columns 0..V)
//
// The = 3 (mod 8) lattice and cells 5 and 7 are never written. That makes
// the left edge recognizable: nine consecutive marked cells can only be
// read pinned against the clamp at cell 1, which is how every long leftward
// walk finds home again.
//
// Unbounded rightward scans (copy, decode, the per-round erase sweep) end
// in a limit jump; the dispatcher reads the phase bits and resumes. On a
// linear order with E elements the machine halts at stage w*(E+2)+k, so
// halting stages grow with the field size.

#include <string>

#include "ittm/errors.hpp"
#include "ittm/programs.hpp"
#include "machine_builder.hpp"

namespace ittm {

namespace {
constexpr int kOut = 2;
std::string num(uint64_t v) { return std::to_string(v); }
}  // namespace

Program make_count_through(uint32_t max_element) {
  if (max_element < 1 || max_element > 15)
    throw Error(ErrorKind::Range, "count-through field bound must be 1..15");
  const uint32_t V = max_element | 1;  // odd keeps slot parities regular
  const uint32_t IC = V + 1;           // first out-of-bounds counter value
  const uint32_t RS = V + 2;           // slots per matrix row
  const uint32_t M0 = V + 2;           // first matrix slot (row 0 anchor)
  const uint32_t kWipeEnd = 16 + 8 * (V + 2);

  MachineBuilder b("count-through", "go", "lim", "halt");

  // from --pat/wr--> move, then steps-1 forced moves, landing in `to`.
  auto go = [&](const std::string& from, const std::string& pat,
                const std::string& wr, Move mv, uint64_t steps,
                const std::string& to, const std::string& lbl) {
    if (steps == 1) {
      b.rule(from, pat, wr, mv, to);
      return;
    }
    std::string mid = lbl + ".s";
    b.rule(from, pat, wr, mv, mid);
    std::string cur = b.walk(mid, mv, steps - 2, lbl);
    b.any(cur, "---", mv, to);
  };

  // Robust walk-left-to-cell-1: probe on every marked odd cell; nine
  // consecutive marked cells pin the head to cell 1. Enter at
  // `prefix.w<cell mod 2>`; `done` is reached standing on cell 1.
  auto emit_home = [&](const std::string& prefix, const std::string& done) {
    if (b.has_state(prefix + ".w1")) return;
    b.on_bit(prefix + ".w1", kOut, 0, "---", Move::LeftMove, prefix + ".w0");
    b.on_bit(prefix + ".w1", kOut, 1, "---", Move::LeftMove, prefix + ".p1");
    b.any(prefix + ".w0", "---", Move::LeftMove, prefix + ".w1");
    b.any(prefix + ".p1", "---", Move::LeftMove, prefix + ".p2");
    for (int t = 2; t <= 10; ++t) {
      std::string st = prefix + ".p" + num(t);
      std::string next = t == 10 ? done : prefix + ".p" + num(t + 1);
      b.on_bit(st, kOut, 1, "---", Move::LeftMove, next);
      if (t < 10)
        b.on_bit(st, kOut, 0, "---", Move::LeftMove,
                 prefix + (t % 2 == 1 ? ".w1" : ".w0"));
    }
  };
  auto home = [&](const std::string& prefix, const std::string& done,
                  int parity) {
    emit_home(prefix, done);
    return prefix + ".w" + num(parity & 1);
  };

  // Shared reject: walk home, clear the answer cell, halt with output 0.
  emit_home("rej", "rej.done");
  b.any("rej.done", "--0", Move::RightMove, "halt");
  auto reject = [&](int parity) { return "rej.w" + num(parity & 1); };

  // ===================== P0: check cell 1, copy ==========================
  b.rule("go", "1**", "---", Move::RightMove, "halt");  // (0,0) in the code
  b.rule("go", "0**", "--1", Move::RightMove, "copy");  // plant home mark
  b.rule("copy", "1**", "-1-", Move::RightMove, "copy");
  b.rule("copy", "0**", "---", Move::RightMove, "copy");

  // ===================== limit dispatcher ================================
  b.any("lim", "---", Move::RightMove, "d1");
  b.on_bit("d1", kOut, 0, "---", Move::RightMove, "d2a");
  b.on_bit("d1", kOut, 1, "---", Move::RightMove, "d2b");
  b.on_bit("d2a", kOut, 0, "---", Move::LeftMove, "p1i");   // copy done
  b.any("p1i", "--1", Move::LeftMove, "scan.first");
  b.on_bit("d2a", kOut, 1, "---", Move::LeftMove, "r0");    // sweep done
  b.any("r0", "---", Move::LeftMove, "round.go");
  b.on_bit("d2b", kOut, 0, "--1", Move::LeftMove, "p2i");   // decode done
  b.any("p2i", "--0", Move::LeftMove, "round.go");

  // ===================== decode scan =====================================
  b.rule("scan.first", "*1*", "--0", Move::RightMove, "halt");  // pair (0,0)
  b.rule("scan.first", "*0*", "---", Move::RightMove, "scan.m2");
  for (int k = 0; k < 8; ++k) {
    std::string st = "scan.m" + num(k);
    b.rule(st, "*0*", "---", Move::RightMove, "scan.m" + num((k + 1) % 8));
    b.rule(st, "*1*", "---", Move::LeftMove, "x.k" + num(k) + ".hold");
  }

  // Bookmark placement: at the 1 at q = k (mod 8), mark cell b = q+delta on
  // the = 1 (mod 8) lattice plus delta more marks 8 apart (they encode
  // delta itself), then return to q and paint leftward.
  auto emit_placement = [&](const std::string& pre, const std::string& paint) {
    for (int k = 0; k < 8; ++k) {
      int delta = (1 - k + 8) % 8;
      std::string base = pre + ".k" + num(k);
      b.any(base + ".hold", "---", Move::RightMove, base + ".at");
      std::string cur = base + ".at";
      if (delta > 0) {
        go(cur, "***", "---", Move::RightMove, delta, base + ".b", base + ".tb");
        cur = base + ".b";
      }
      for (int t = 0; t < delta; ++t) {
        std::string nxt = base + ".d" + num(t);
        go(cur, "***", "--1", Move::RightMove, 8, nxt, base + ".dm" + num(t));
        cur = nxt;
      }
      b.any(cur, "--1", Move::RightMove, base + ".fin");
      int r = ((1 - delta) % 4 + 4) % 4;  // q mod 4
      go(base + ".fin", "***", "---", Move::LeftMove, 9 * delta + 1,
         paint + ".r" + num(r) + ".h" + num(k), base + ".bk");
    }
  };

  // Paint: walk left from q writing the = 0 (mod 4) lattice, record
  // r = q mod 4 at cells 6,7, continue at `cont` from cell 1. The walk
  // tracks the cell mod 8 and probes for home on marked = 1 (mod 8) cells.
  auto emit_paint = [&](const std::string& pre, const std::string& cont) {
    for (int r = 0; r < 4; ++r) {
      std::string p = pre + ".r" + num(r);
      for (int k = 0; k < 8; ++k) {
        std::string st = p + ".h" + num(k);
        std::string next = p + ".h" + num((k + 7) % 8);
        std::string wr = (k == 0 || k == 4) ? "--1" : "---";
        if (k == 1) {
          b.on_bit(st, kOut, 0, "---", Move::LeftMove, next);
          b.on_bit(st, kOut, 1, "---", Move::LeftMove, p + ".q2");
        } else {
          b.any(st, wr, Move::LeftMove, next);
        }
      }
      for (int t = 2; t <= 10; ++t) {
        std::string st = p + ".q" + num(t);
        std::string next = t == 10 ? p + ".home" : p + ".q" + num(t + 1);
        b.on_bit(st, kOut, 1, "---", Move::LeftMove, next);
        if (t < 10)
          b.on_bit(st, kOut, 0, "---", Move::LeftMove,
                   p + ".h" + num(((1 - t) % 8 + 8) % 8));
      }
      go(p + ".home", "***", "---", Move::RightMove, 5, p + ".w6", p + ".o");
      b.any(p + ".w6", (r & 1) ? "--1" : "--0", Move::RightMove, p + ".w7");
      go(p + ".w7", "***", (r & 2) ? "--1" : "--0", Move::LeftMove, 6, cont,
         p + ".bk");
    }
  };

  // Rewrite cells 6,7 to r and continue (entered at cell 1).
  auto emit_write_r = [&](int r, const std::string& tag,
                          const std::string& cont) {
    std::string pre = "wr." + tag + ".r" + num(r);
    if (b.has_state(pre)) return pre;
    go(pre, "***", "---", Move::RightMove, 5, pre + ".w6", pre + ".o");
    b.any(pre + ".w6", (r & 1) ? "--1" : "--0", Move::RightMove, pre + ".w7");
    go(pre + ".w7", "***", (r & 2) ? "--1" : "--0", Move::LeftMove, 6, cont,
       pre + ".bk");
    return pre;
  };

  emit_placement("x", "xp");
  emit_paint("xp", "t2.i0.start");

  // ---- divide by 2, counting i: one pass erases every other paint mark;
  // v = 4m+r halves to floor(m/2) marks with r' = 2*(m mod 2) + r/2.
  for (uint32_t i = 0; i < IC; ++i) {
    std::string pre = "t2.i" + num(i);
    go(pre + ".start", "***", "---", Move::RightMove, 5, pre + ".r6", pre + ".o");
    // odd value: i is final; go mark roster[i] and the row anchor.
    b.on_bit(pre + ".r6", kOut, 1, "---", Move::LeftMove,
             "anchor.i" + num(i) + ".b0");
    if (i + 1 >= IC) {
      b.on_bit(pre + ".r6", kOut, 0, "---", Move::LeftMove, reject(1));
    } else {
      b.on_bit(pre + ".r6", kOut, 0, "---", Move::RightMove, pre + ".r7");
      for (int b1 = 0; b1 < 2; ++b1)
        b.on_bit(pre + ".r7", kOut, b1, "---", Move::RightMove,
                 pre + ".b" + num(b1) + ".p0.m0");
      for (int b1 = 0; b1 < 2; ++b1)
        for (int par = 0; par < 2; ++par)
          for (int k = 0; k < 8; ++k) {
            std::string st =
                pre + ".b" + num(b1) + ".p" + num(par) + ".m" + num(k);
            auto at = [&](int np, int nk) {
              return pre + ".b" + num(b1) + ".p" + num(np) + ".m" + num(nk);
            };
            if (k == 0 || k == 4) {
              b.on_bit(st, kOut, 0, "---", Move::RightMove, at(par, (k + 1) % 8));
              b.on_bit(st, kOut, 1, par == 0 ? "--0" : "---", Move::RightMove,
                       at(1 - par, (k + 1) % 8));
            } else if (k == 1) {
              b.on_bit(st, kOut, 0, "---", Move::RightMove, at(par, (k + 1) % 8));
              int rn = 2 * par + b1;
              b.on_bit(st, kOut, 1, "---", Move::LeftMove,
                       home(pre + ".h" + num(rn),
                            emit_write_r(rn, "t2i" + num(i + 1),
                                         "t2.i" + num(i + 1) + ".start"),
                            0));
            } else {
              b.any(st, "---", Move::RightMove, at(par, (k + 1) % 8));
            }
          }
    }
  }

  // ---- roster[i] and the row anchor mark at slot M0 + i*RS.
  for (uint32_t i = 0; i < IC; ++i) {
    std::string pre = "anchor.i" + num(i);
    go(pre + ".b0", "***", "---", Move::LeftMove, 5, pre + ".at1", pre + ".bw");
    go(pre + ".at1", "***", "---", Move::RightMove, 9 + 4 * i, pre + ".ri",
       pre + ".tr");
    uint64_t anchor_cell = 10 + 4 * (M0 + i * RS);
    go(pre + ".ri", "***", "--1", Move::RightMove, anchor_cell - (10 + 4 * i),
       pre + ".an", pre + ".ta");
    b.any(pre + ".an", "--1", Move::LeftMove,
          home(pre + ".h", "t3.j0.start", 1));
  }

  // ---- divide by 3, counting j: a counting pass (counter seeded with
  // r mod 3 ends at (m+r) mod 3), then a thinning pass keeping each third
  // mark, with r' = (4s+r)/3 for s = m mod 3.
  for (uint32_t j = 0; j < IC; ++j) {
    std::string pre = "t3.j" + num(j);
    go(pre + ".start", "***", "---", Move::RightMove, 5, pre + ".r6", pre + ".o");
    for (int b0 = 0; b0 < 2; ++b0) {
      b.on_bit(pre + ".r6", kOut, b0, "---", Move::RightMove,
               pre + ".r7b" + num(b0));
      for (int b1 = 0; b1 < 2; ++b1) {
        int r = b0 + 2 * b1;
        b.on_bit(pre + ".r7b" + num(b0), kOut, b1, "---", Move::RightMove,
                 pre + ".c" + num(r % 3) + ".m0");
      }
    }
    for (int cnt = 0; cnt < 3; ++cnt)
      for (int k = 0; k < 8; ++k) {
        std::string st = pre + ".c" + num(cnt) + ".m" + num(k);
        std::string step = pre + ".c" + num(cnt) + ".m" + num((k + 1) % 8);
        if (k == 0 || k == 4) {
          b.on_bit(st, kOut, 0, "---", Move::RightMove, step);
          b.on_bit(st, kOut, 1, "---", Move::RightMove,
                   pre + ".c" + num((cnt + 1) % 3) + ".m" + num((k + 1) % 8));
        } else if (k == 1) {
          b.on_bit(st, kOut, 0, "---", Move::RightMove, step);
          if (cnt == 0) {
            if (j + 1 >= IC)
              b.on_bit(st, kOut, 1, "---", Move::LeftMove, reject(0));
            else
              b.on_bit(st, kOut, 1, "---", Move::LeftMove,
                       home(pre + ".hd", "t3t.j" + num(j) + ".start", 0));
          } else {
            b.on_bit(st, kOut, 1, "---", Move::LeftMove,
                     home(pre + ".hn", "v1.j" + num(j) + ".start", 0));
          }
        } else {
          b.any(st, "---", Move::RightMove, step);
        }
      }
    std::string tp = "t3t.j" + num(j);
    go(tp + ".start", "***", "---", Move::RightMove, 5, tp + ".r6", tp + ".o");
    for (int b0 = 0; b0 < 2; ++b0) {
      b.on_bit(tp + ".r6", kOut, b0, "---", Move::RightMove,
               tp + ".r7b" + num(b0));
      for (int b1 = 0; b1 < 2; ++b1) {
        int r = b0 + 2 * b1;
        b.on_bit(tp + ".r7b" + num(b0), kOut, b1, "---", Move::RightMove,
                 tp + ".r" + num(r) + ".k0.m0");
      }
    }
    for (int r = 0; r < 4; ++r)
      for (int k3 = 0; k3 < 3; ++k3)
        for (int k = 0; k < 8; ++k) {
          std::string st = tp + ".r" + num(r) + ".k" + num(k3) + ".m" + num(k);
          auto at = [&](int nk3, int nk) {
            return tp + ".r" + num(r) + ".k" + num(nk3) + ".m" + num(nk);
          };
          if (k == 0 || k == 4) {
            b.on_bit(st, kOut, 0, "---", Move::RightMove, at(k3, (k + 1) % 8));
            b.on_bit(st, kOut, 1, k3 == 2 ? "---" : "--0", Move::RightMove,
                     at((k3 + 1) % 3, (k + 1) % 8));
          } else if (k == 1) {
            b.on_bit(st, kOut, 0, "---", Move::RightMove, at(k3, (k + 1) % 8));
            if ((4 * k3 + r) % 3 == 0) {
              int rn = (4 * k3 + r) / 3;
              b.on_bit(st, kOut, 1, "---", Move::LeftMove,
                       home(tp + ".h" + num(r) + num(k3),
                            emit_write_r(rn, "t3j" + num(j),
                                         "t3.j" + num(j) + ".start"),
                            0));
            } else {
              b.on_bit(st, kOut, 1, "---", Move::LeftMove, "bug");
            }
          } else {
            b.any(st, "---", Move::RightMove, at(k3, (k + 1) % 8));
          }
        }
  }

  // ---- value == 1 check: r must be 1 and no paint marks may remain;
  // anything else was a 1 at a position other than 2^i*3^j.
  for (uint32_t j = 0; j < IC; ++j) {
    std::string pre = "v1.j" + num(j);
    go(pre + ".start", "***", "---", Move::RightMove, 5, pre + ".r6", pre + ".o");
    b.on_bit(pre + ".r6", kOut, 0, "---", Move::LeftMove, reject(1));
    b.on_bit(pre + ".r6", kOut, 1, "---", Move::RightMove, pre + ".r7");
    b.on_bit(pre + ".r7", kOut, 1, "---", Move::LeftMove, reject(0));
    b.on_bit(pre + ".r7", kOut, 0, "---", Move::RightMove, pre + ".m0");
    for (int k = 0; k < 8; ++k) {
      std::string st = pre + ".m" + num(k);
      std::string step = pre + ".m" + num((k + 1) % 8);
      if (k == 0 || k == 4) {
        b.on_bit(st, kOut, 0, "---", Move::RightMove, step);
        b.on_bit(st, kOut, 1, "---", Move::LeftMove, reject(1));
      } else if (k == 1) {
        b.on_bit(st, kOut, 0, "---", Move::RightMove, step);
        b.on_bit(st, kOut, 1, "---", Move::LeftMove,
                 home(pre + ".h", "edge.j" + num(j) + ".start", 0));
      } else {
        b.any(st, "---", Move::RightMove, step);
      }
    }
  }

  // ---- roster[j], then find the unique row anchor and write the edge
  // mark j+1 slots after it.
  for (uint32_t j = 0; j < IC; ++j) {
    std::string pre = "edge.j" + num(j);
    go(pre + ".start", "***", "---", Move::RightMove, 9 + 4 * j, pre + ".rj",
       pre + ".tr");
    go(pre + ".rj", "***", "--1", Move::RightMove, 4 * (M0 - j), pre + ".pr",
       pre + ".tm");
    // probe an anchor-column slot
    b.on_bit(pre + ".pr", kOut, 1, "--0", Move::RightMove, pre + ".f");
    go(pre + ".f", "***", "---", Move::RightMove, 4 * (j + 1) - 1, pre + ".w",
       pre + ".te");
    b.any(pre + ".w", "--1", Move::LeftMove, home(pre + ".h", "clean.go", 1));
    b.on_bit(pre + ".pr", kOut, 0, "---", Move::RightMove, pre + ".n");
    go(pre + ".n", "***", "---", Move::RightMove, 4 * RS - 1, pre + ".pr",
       pre + ".hop");
  }

  // ---- cleanup after one decoded pair: erase the paint, read the
  // bookmark's delta destructively, resume the scan at q+1.
  auto emit_cleanup = [&](const std::string& pre, const std::string& scan,
                          bool erase_scratch) {
    go(pre, "***", "---", Move::RightMove, 1, pre + ".m2", pre + ".o");
    for (int k = 0; k < 8; ++k) {
      std::string st = pre + ".m" + num(k);
      std::string step = pre + ".m" + num((k + 1) % 8);
      if (k == 0 || k == 4) {
        b.on_bit(st, kOut, 0, "---", Move::RightMove, step);
        b.on_bit(st, kOut, 1, "--0", Move::RightMove, step);
      } else if (k == 1) {
        b.on_bit(st, kOut, 0, "---", Move::RightMove, step);
        b.on_bit(st, kOut, 1, "--0", Move::RightMove, pre + ".rb0.w");
      } else {
        b.any(st, "---", Move::RightMove, step);
      }
    }
    for (int t = 0; t <= 7; ++t) {
      std::string rb = pre + ".rb" + num(t);
      go(rb + ".w", "***", "---", Move::RightMove, 7, rb, rb + ".skip");
      if (t < 7)
        b.on_bit(rb, kOut, 1, "--0", Move::RightMove,
                 pre + ".rb" + num(t + 1) + ".w");
      else
        b.on_bit(rb, kOut, 1, "--0", Move::RightMove, "bug");
      // delta = t: currently at b + 8(t+1); q+1 = b - t + 1.
      int resume_mod = ((2 - t) % 8 + 8) % 8;
      if (erase_scratch) {
        // step to q, clear the decoded 1, then stand on q+1.
        std::string atq = rb + ".q";
        go(rb, "**0", "---", Move::LeftMove, 9 * t + 8, atq, rb + ".bkq");
        b.rule(atq, "***", "-0-", Move::RightMove,
               scan + ".m" + num(resume_mod));
      } else {
        go(rb, "**0", "---", Move::LeftMove, 9 * t + 7,
           scan + ".m" + num(resume_mod), rb + ".bk");
      }
    }
  };
  emit_cleanup("clean.go", "scan", false);

  // ===================== rounds ==========================================
  // Wipe the guess and current-least lattices, then look for a live roster
  // element. None left means the relation has been fully erased: accept.
  {
    // The rule emitted for cell c fires with the head on cell c.
    std::string cur = "round.go";
    for (uint32_t c = 1; c <= kWipeEnd; ++c) {
      std::string nxt = "round.z" + num(c);
      bool wipe = (c >= 13 && c % 8 == 5) || (c >= 15 && c % 8 == 7);
      b.any(cur, wipe ? "--0" : "---", Move::RightMove, nxt);
      cur = nxt;
    }
    b.any(cur, "---", Move::LeftMove,
          home("round.h", "round.ro", kWipeEnd % 2));
    go("round.ro", "***", "---", Move::RightMove, 9, "ro.s0", "round.tr");
    for (uint32_t t = 0; t <= V; ++t) {
      std::string st = "ro.s" + num(t);
      // live element: make it the initial guess (mark at 15+8t).
      std::string hit = "ro.hit" + num(t);
      b.on_bit(st, kOut, 1, "---", Move::RightMove, hit);
      go(hit, "***", "---", Move::RightMove, 4 + 4 * t, "ro.vm" + num(t),
         hit + ".w");
      b.any("ro.vm" + num(t), "--1", Move::LeftMove,
            home("ro.h" + num(t), "rev.go", 0));
      if (t < V)
        go(st, "**0", "---", Move::RightMove, 4, "ro.s" + num(t + 1),
           st + ".hop");
      else
        b.rule(st, "**0", "---", Move::LeftMove, home("acc", "acc.done", 1));
    }
    b.any("acc.done", "---", Move::RightMove, "halt");  // output stays 1
  }

  // ---- guess revision: read the guess g, scan column g for an in-edge;
  // a hit at row x revises the guess to x (marking the change), a clean
  // column means g is the least.
  {
    go("rev.go", "***", "---", Move::RightMove, 14, "vr.c0", "rev.o");
    for (uint32_t c = 0; c <= V; ++c) {
      std::string st = "vr.c" + num(c);
      if (c < V)
        go(st, "**0", "---", Move::RightMove, 8, "vr.c" + num(c + 1),
           st + ".hop");
      else
        b.on_bit(st, kOut, 0, "---", Move::RightMove, "bug");
      // g = c: walk from cell 15+8c to the column-c probe slot of row 0,
      // cell 10 + 4*(M0 + c + 1).
      uint64_t target = 10 + 4 * (M0 + c + 1);
      go(st, "**1", "---", Move::RightMove, target - (15 + 8 * c), "cp.x0",
         st + ".go");
    }
    for (uint32_t row = 0; row <= V; ++row) {
      std::string st = "cp.x" + num(row);
      // in-edge found: revise the guess to `row`.
      b.on_bit(st, kOut, 1, "---", Move::LeftMove,
               home("cp.h" + num(row), "rv.row" + num(row), 1));
      if (row < V)
        go(st, "**0", "---", Move::RightMove, 4 * RS, "cp.x" + num(row + 1),
           st + ".hop");
      else
        b.on_bit(st, kOut, 0, "---", Move::LeftMove,
                 home("cp.clean", "tot.go", 1));
    }
    for (uint32_t row = 0; row <= V; ++row) {
      // erase the old guess mark, write the new one, append a guess-change
      // mark, restart the revision pass.
      std::string pre = "rv.row" + num(row);
      go(pre, "***", "---", Move::RightMove, 14, pre + ".e0", pre + ".o");
      for (uint32_t c = 0; c <= V; ++c) {
        std::string st = pre + ".e" + num(c);
        b.on_bit(st, kOut, 1, "--0", Move::LeftMove,
                 home(pre + ".h" + num(c), pre + ".nw", 0));
        if (c < V)
          go(st, "**0", "---", Move::RightMove, 8, pre + ".e" + num(c + 1),
             st + ".hop");
        else
          b.on_bit(st, kOut, 0, "---", Move::RightMove, "bug");
      }
      go(pre + ".nw", "***", "---", Move::RightMove, 14 + 8 * row,
         pre + ".wv", pre + ".tw");
      b.any(pre + ".wv", "--1", Move::LeftMove, home(pre + ".hw", "gm.go", 0));
    }
    // guess-change mark: first free cell of the = 5 (mod 8) lattice.
    go("gm.go", "***", "---", Move::RightMove, 12, "ga.c0", "gm.o");
    for (uint32_t t = 0; t <= V + 1; ++t) {
      std::string st = "ga.c" + num(t);
      if (t <= V) {
        go(st, "**1", "---", Move::RightMove, 8, "ga.c" + num(t + 1),
           st + ".hop");
        b.on_bit(st, kOut, 0, "--1", Move::LeftMove,
                 home("ga.h", "rev.go", 0));
      } else {
        // too many revisions: a descending cycle, not a well-order
        b.any(st, "---", Move::LeftMove, reject(0));
      }
    }
  }

  // ---- totality check and erase: the least element v must have an edge to
  // every other live element. Erase roster[v], count-and-erase row v, then
  // match the count against the remaining roster.
  {
    go("tot.go", "***", "---", Move::RightMove, 14, "tv.c0", "tot.o");
    for (uint32_t c = 0; c <= V; ++c) {
      std::string st = "tv.c" + num(c);
      if (c < V)
        go(st, "**0", "---", Move::RightMove, 8, "tv.c" + num(c + 1),
           st + ".hop");
      else
        b.on_bit(st, kOut, 0, "---", Move::RightMove, "bug");
      b.on_bit(st, kOut, 1, "---", Move::LeftMove,
               home("tv.h" + num(c), "rz.v" + num(c), 0));
    }
    for (uint32_t v = 0; v <= V; ++v) {
      // erase roster[v], then navigate to row v's first edge slot.
      std::string pre = "rz.v" + num(v);
      go(pre, "***", "---", Move::RightMove, 9 + 4 * v, pre + ".z", pre + ".o");
      b.any(pre + ".z", "--0", Move::LeftMove,
            home(pre + ".h", "tn.v" + num(v), 1));
      uint64_t row_first = 10 + 4 * (M0 + v * RS + 1);
      go("tn.v" + num(v), "***", "---", Move::RightMove, row_first - 1,
         "te.c0.s0", "tn.v" + num(v) + ".o");
    }
    // count-and-erase the 16 edge slots of the row.
    for (uint32_t T = 0; T <= V + 1; ++T)
      for (uint32_t s = 0; s <= V; ++s) {
        std::string st = "te.c" + num(T) + ".s" + num(s);
        std::string nx_same = "te.c" + num(T) + ".s" + num(s + 1);
        std::string nx_inc = "te.c" + num(T + 1) + ".s" + num(s + 1);
        if (s < V) {
          go(st, "**0", "---", Move::RightMove, 4, nx_same, st + ".h0");
          if (T <= V)
            go(st, "**1", "--0", Move::RightMove, 4, nx_inc, st + ".h1");
          else
            b.on_bit(st, kOut, 1, "--0", Move::RightMove, "bug");
        } else {
          b.on_bit(st, kOut, 0, "---", Move::LeftMove,
                   home("te.hh" + num(T), "rc.T" + num(T), 1));
          if (T <= V)
            b.on_bit(st, kOut, 1, "--0", Move::LeftMove,
                     home("te.hh" + num(T + 1), "rc.T" + num(T + 1), 1));
          else
            b.on_bit(st, kOut, 1, "--0", Move::LeftMove, "bug");
        }
      }
    // compare: remaining live roster count must equal T exactly.
    for (uint32_t T = 0; T <= V + 1; ++T)
      go("rc.T" + num(T), "***", "---", Move::RightMove, 9,
         "rc.c" + num(T) + ".s0", "rc.T" + num(T) + ".o");
    for (uint32_t T = 0; T <= V + 1; ++T)
      for (uint32_t s = 0; s <= V; ++s) {
        std::string st = "rc.c" + num(T) + ".s" + num(s);
        std::string miss = s == V ? "" : "rc.c" + num(T) + ".s" + num(s + 1);
        std::string hit =
            s == V ? "" : "rc.c" + num(T - (T > 0 ? 1 : 0)) + ".s" + num(s + 1);
        if (s < V) {
          go(st, "**0", "---", Move::RightMove, 4, miss, st + ".h0");
          if (T > 0)
            go(st, "**1", "---", Move::RightMove, 4, hit, st + ".h1");
          else
            b.on_bit(st, kOut, 1, "---", Move::LeftMove, reject(1));
        } else {
          // last slot: verdict
          if (T == 0) {
            b.on_bit(st, kOut, 0, "---", Move::LeftMove,
                     home("rc.win", "sw.go", 1));
            b.on_bit(st, kOut, 1, "---", Move::LeftMove, reject(1));
          } else if (T == 1) {
            b.on_bit(st, kOut, 1, "---", Move::LeftMove,
                     home("rc.win", "sw.go", 1));
            b.on_bit(st, kOut, 0, "---", Move::LeftMove, reject(1));
          } else {
            b.any(st, "---", Move::LeftMove, reject(1));
          }
        }
      }
  }

  // ===================== sweep: erase v's 1s on scratch ==================
  // Scan the scratch copy; decode each 1's 2-exponent against the guess
  // mark (still at 15+8v) and clear matches. The end of the scan reaches
  // the limit; the dispatcher starts the next round.
  b.rule("sw.go", "*1*", "---", Move::RightMove, "bug");  // cell 1 never set
  b.rule("sw.go", "*0*", "---", Move::RightMove, "sw.m2");
  for (int k = 0; k < 8; ++k) {
    std::string st = "sw.m" + num(k);
    b.rule(st, "*0*", "---", Move::RightMove, "sw.m" + num((k + 1) % 8));
    b.rule(st, "*1*", "---", Move::LeftMove, "sx.k" + num(k) + ".hold");
  }
  emit_placement("sx", "sxp");
  emit_paint("sxp", "swe.go");
  go("swe.go", "***", "---", Move::RightMove, 14, "swe.c0", "swe.o");
  for (uint32_t c = 0; c <= V; ++c) {
    std::string st = "swe.c" + num(c);
    if (c < V)
      go(st, "**0", "---", Move::RightMove, 8, "swe.c" + num(c + 1),
         st + ".hop");
    else
      b.on_bit(st, kOut, 0, "---", Move::RightMove, "bug");
    b.on_bit(st, kOut, 1, "---", Move::LeftMove,
             home("swe.h" + num(c), "sw2.cd" + num(c) + ".start", 0));
  }
  for (uint32_t cd = 0; cd <= V; ++cd) {
    std::string pre = "sw2.cd" + num(cd);
    go(pre + ".start", "***", "---", Move::RightMove, 5, pre + ".r6", pre + ".o");
    // odd: the 2-exponent is fully counted; equal iff cd == 0.
    b.on_bit(pre + ".r6", kOut, 1, "---", Move::LeftMove,
             home(pre + ".he", cd == 0 ? "swq.go" : "swn.go", 1));
    if (cd == 0) {
      // still even: exponent exceeds v, not a match.
      b.on_bit(pre + ".r6", kOut, 0, "---", Move::LeftMove,
               home(pre + ".hn", "swn.go", 1));
    } else {
      b.on_bit(pre + ".r6", kOut, 0, "---", Move::RightMove, pre + ".r7");
      for (int b1 = 0; b1 < 2; ++b1)
        b.on_bit(pre + ".r7", kOut, b1, "---", Move::RightMove,
                 pre + ".b" + num(b1) + ".p0.m0");
      for (int b1 = 0; b1 < 2; ++b1)
        for (int par = 0; par < 2; ++par)
          for (int k = 0; k < 8; ++k) {
            std::string st =
                pre + ".b" + num(b1) + ".p" + num(par) + ".m" + num(k);
            auto at = [&](int np, int nk) {
              return pre + ".b" + num(b1) + ".p" + num(np) + ".m" + num(nk);
            };
            if (k == 0 || k == 4) {
              b.on_bit(st, kOut, 0, "---", Move::RightMove, at(par, (k + 1) % 8));
              b.on_bit(st, kOut, 1, par == 0 ? "--0" : "---", Move::RightMove,
                       at(1 - par, (k + 1) % 8));
            } else if (k == 1) {
              b.on_bit(st, kOut, 0, "---", Move::RightMove, at(par, (k + 1) % 8));
              int rn = 2 * par + b1;
              b.on_bit(st, kOut, 1, "---", Move::LeftMove,
                       home(pre + ".h" + num(rn),
                            emit_write_r(rn, "sw2cd" + num(cd - 1),
                                         "sw2.cd" + num(cd - 1) + ".start"),
                            0));
            } else {
              b.any(st, "---", Move::RightMove, at(par, (k + 1) % 8));
            }
          }
    }
  }
  emit_cleanup("swq.go", "sw", true);   // match: clear the scratch 1
  emit_cleanup("swn.go", "sw", false);  // no match

  Program prog = b.build();
  if (prog.branching_width() != 1)
    throw Error(ErrorKind::InvalidChecker,
                "count-through generator produced a branching machine");
  return prog;
}

}  // namespace ittm
