// Generator for the countable-index (co-dex) membership checker.
//
// The scratch tape holds a candidate real. A member of the selected family
// has 1s exactly at 6^n, 6^2n, 6^3n, ... for some n >= 1. The machine scans
// for the first 1, verifies it sits at some 6^n (equal counts of 2- and
// 3-divisions, nothing left over), then demands each further 1 sit exactly
// at the next power 6^(k+1)n, until the next expected exponent exceeds the
// frontier — at which point it accepts. A missing or misplaced 1 within the
// frontier rejects; running off the end of a finite candidate reaches the
// limit state, whose only response is to reject.
//
// Output tape layout (same division machinery as the count-through
// machine): cell 1 home/answer, cells 6,7 the value's mod-4 bits,
// = 1 (mod 8) bookmarks, = 0 (mod 4) unary paint, plus one mark at 13+8n
// (the detected step n) and one at 15+8T (the next expected exponent T).
// The = 3 (mod 8) lattice and cells 5,7 stay unwritten so leftward walks
// can recognize cell 1 by its nine-ones clamp signature.

#include <string>

#include "ittm/errors.hpp"
#include "ittm/programs.hpp"
#include "machine_builder.hpp"

namespace ittm {

namespace {
constexpr int kOut = 2;
std::string num(uint64_t v) { return std::to_string(v); }
}  // namespace

Program make_codex_checker(uint64_t frontier) {
  if (frontier < 6)
    throw Error(ErrorKind::Range, "codex frontier must be at least 6");
  uint32_t M = 0;  // largest exponent with 6^M <= frontier, capped
  for (uint64_t p = 1; M < 8 && p <= frontier / 6; ++M) p *= 6;
  const uint32_t cap = M + 1;

  MachineBuilder b("codex", "go", "lim", "halt");

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

  emit_home("rej", "rej.done");
  b.any("rej.done", "--0", Move::RightMove, "halt");
  auto reject = [&](int parity) { return "rej.w" + num(parity & 1); };

  emit_home("acc", "acc.done");
  b.any("acc.done", "---", Move::RightMove, "halt");  // answer stays 1

  // A finite candidate's scan always runs off the end eventually; reaching
  // the limit before the family is complete within the frontier rejects.
  b.any("lim", "--0", Move::RightMove, "halt");

  // ---- scan ----
  b.rule("go", "*1*", "---", Move::RightMove, "halt");   // 1 at cell 1: n=0
  b.rule("go", "*0*", "--1", Move::RightMove, "sc.m2");  // plant home mark
  for (int k = 0; k < 8; ++k) {
    std::string st = "sc.m" + num(k);
    b.rule(st, "*0*", "---", Move::RightMove, "sc.m" + num((k + 1) % 8));
    b.rule(st, "*1*", "---", Move::LeftMove, "cx.k" + num(k) + ".hold");
  }

  // ---- bookmark + paint (same scheme as the count-through machine) ----
  for (int k = 0; k < 8; ++k) {
    int delta = (1 - k + 8) % 8;
    std::string base = "cx.k" + num(k);
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
    int r = ((1 - delta) % 4 + 4) % 4;
    go(base + ".fin", "***", "---", Move::LeftMove, 9 * delta + 1,
       "cxp.r" + num(r) + ".h" + num(k), base + ".bk");
  }
  for (int r = 0; r < 4; ++r) {
    std::string p = "cxp.r" + num(r);
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
    go(p + ".w7", "***", (r & 2) ? "--1" : "--0", Move::LeftMove, 6, "md.go",
       p + ".bk");
  }

  // ---- mode dispatch: an expected-exponent mark at 15+8T means we are
  // mid-family; otherwise this is the first 1.
  go("md.go", "***", "---", Move::RightMove, 14, "md.c0", "md.o");
  for (uint32_t c = 0; c <= M; ++c) {
    std::string st = "md.c" + num(c);
    // A stored expected exponent is always at least 2.
    b.on_bit(st, kOut, 1, "---", Move::LeftMove,
             c < 2 ? "bug"
                   : home("md.h" + num(c), "v2T" + num(c) + ".i0.start", 0));
    if (c < M)
      go(st, "**0", "---", Move::RightMove, 8, "md.c" + num(c + 1),
         st + ".hop");
    else
      b.on_bit(st, kOut, 0, "---", Move::LeftMove,
               home("md.hf", "fi.i0.start", 0));
  }

  // ---- first member: count the 2-exponent i, check the 3-exponent equals
  // it and nothing remains; then n := i.
  auto emit_t2_count = [&](const std::string& tag, uint32_t limit,
                           auto&& odd_target, const std::string& over) {
    // odd_target(i) -> state entered (at cell 1... actually at cell 6 going
    // left) when the value turns odd after i halvings.
    for (uint32_t i = 0; i <= limit; ++i) {
      std::string pre = tag + ".i" + num(i);
      go(pre + ".start", "***", "---", Move::RightMove, 5, pre + ".r6",
         pre + ".o");
      b.on_bit(pre + ".r6", kOut, 1, "---", Move::LeftMove, odd_target(i));
      if (i + 1 > limit) {
        b.on_bit(pre + ".r6", kOut, 0, "---", Move::LeftMove, over);
        continue;
      }
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
              b.on_bit(st, kOut, 0, "---", Move::RightMove,
                       at(par, (k + 1) % 8));
              b.on_bit(st, kOut, 1, par == 0 ? "--0" : "---", Move::RightMove,
                       at(1 - par, (k + 1) % 8));
            } else if (k == 1) {
              b.on_bit(st, kOut, 0, "---", Move::RightMove,
                       at(par, (k + 1) % 8));
              int rn = 2 * par + b1;
              std::string wrpre = "wr." + tag + num(i + 1) + ".r" + num(rn);
              if (!b.has_state(wrpre)) {
                go(wrpre, "***", "---", Move::RightMove, 5, wrpre + ".w6",
                   wrpre + ".o");
                b.any(wrpre + ".w6", (rn & 1) ? "--1" : "--0", Move::RightMove,
                      wrpre + ".w7");
                go(wrpre + ".w7", "***", (rn & 2) ? "--1" : "--0",
                   Move::LeftMove, 6, tag + ".i" + num(i + 1) + ".start",
                   wrpre + ".bk");
              }
              b.on_bit(st, kOut, 1, "---", Move::LeftMove,
                       home(pre + ".h" + num(rn), wrpre, 0));
            } else {
              b.any(st, "---", Move::RightMove, at(par, (k + 1) % 8));
            }
          }
    }
  };

  // ---- 3-exponent verifier with a countdown: pass pairs (count, thin)
  // exactly like the count-through machine, but the division count must hit
  // `cd` exactly and leave value 1.
  auto emit_t3_countdown = [&](const std::string& tag, uint32_t start_cd,
                               const std::string& success,
                               const std::string& fail_parity0) {
    for (uint32_t cd = 0; cd <= start_cd; ++cd) {
      std::string pre = tag + ".cd" + num(cd);
      go(pre + ".start", "***", "---", Move::RightMove, 5, pre + ".r6",
         pre + ".o");
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
              // divisible: one more third is required
              if (cd == 0)
                b.on_bit(st, kOut, 1, "---", Move::LeftMove, fail_parity0);
              else
                b.on_bit(st, kOut, 1, "---", Move::LeftMove,
                         home(pre + ".hd", tag + "t.cd" + num(cd) + ".start",
                              0));
            } else {
              // not divisible: the count must be spent and value 1 left
              if (cd == 0)
                b.on_bit(st, kOut, 1, "---", Move::LeftMove,
                         home(pre + ".hv", tag + ".v1", 0));
              else
                b.on_bit(st, kOut, 1, "---", Move::LeftMove, fail_parity0);
            }
          } else {
            b.any(st, "---", Move::RightMove, step);
          }
        }
      if (cd > 0) {
        std::string tp = tag + "t.cd" + num(cd);
        go(tp + ".start", "***", "---", Move::RightMove, 5, tp + ".r6",
           tp + ".o");
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
              std::string st =
                  tp + ".r" + num(r) + ".k" + num(k3) + ".m" + num(k);
              auto at = [&](int nk3, int nk) {
                return tp + ".r" + num(r) + ".k" + num(nk3) + ".m" + num(nk);
              };
              if (k == 0 || k == 4) {
                b.on_bit(st, kOut, 0, "---", Move::RightMove,
                         at(k3, (k + 1) % 8));
                b.on_bit(st, kOut, 1, k3 == 2 ? "---" : "--0", Move::RightMove,
                         at((k3 + 1) % 3, (k + 1) % 8));
              } else if (k == 1) {
                b.on_bit(st, kOut, 0, "---", Move::RightMove,
                         at(k3, (k + 1) % 8));
                if ((4 * k3 + r) % 3 == 0) {
                  int rn = (4 * k3 + r) / 3;
                  std::string wrpre =
                      "wr." + tag + "cd" + num(cd - 1) + ".r" + num(rn);
                  if (!b.has_state(wrpre)) {
                    go(wrpre, "***", "---", Move::RightMove, 5, wrpre + ".w6",
                       wrpre + ".o");
                    b.any(wrpre + ".w6", (rn & 1) ? "--1" : "--0",
                          Move::RightMove, wrpre + ".w7");
                    go(wrpre + ".w7", "***", (rn & 2) ? "--1" : "--0",
                       Move::LeftMove, 6,
                       tag + ".cd" + num(cd - 1) + ".start", wrpre + ".bk");
                  }
                  b.on_bit(st, kOut, 1, "---", Move::LeftMove,
                           home(tp + ".h" + num(r) + num(k3), wrpre, 0));
                } else {
                  b.on_bit(st, kOut, 1, "---", Move::LeftMove, "bug");
                }
              } else {
                b.any(st, "---", Move::RightMove, at(k3, (k + 1) % 8));
              }
            }
      }
      // value == 1 check: r must be 1, no paint marks left.
      std::string v1 = tag + ".v1";
      if (!b.has_state(v1)) {
        go(v1, "***", "---", Move::RightMove, 5, v1 + ".r6", v1 + ".oo");
        b.on_bit(v1 + ".r6", kOut, 0, "---", Move::LeftMove, reject(1));
        b.on_bit(v1 + ".r6", kOut, 1, "---", Move::RightMove, v1 + ".r7");
        b.on_bit(v1 + ".r7", kOut, 1, "---", Move::LeftMove, reject(0));
        b.on_bit(v1 + ".r7", kOut, 0, "---", Move::RightMove, v1 + ".m0");
        for (int k = 0; k < 8; ++k) {
          std::string st = v1 + ".m" + num(k);
          std::string step = v1 + ".m" + num((k + 1) % 8);
          if (k == 0 || k == 4) {
            b.on_bit(st, kOut, 0, "---", Move::RightMove, step);
            b.on_bit(st, kOut, 1, "---", Move::LeftMove, reject(1));
          } else if (k == 1) {
            b.on_bit(st, kOut, 0, "---", Move::RightMove, step);
            b.on_bit(st, kOut, 1, "---", Move::LeftMove,
                     home(v1 + ".h", success, 0));
          } else {
            b.any(st, "---", Move::RightMove, step);
          }
        }
      }
    }
  };

  // First member: i halvings, then the 3-exponent must equal i (and i >= 1).
  emit_t2_count(
      "fi", M,
      [&](uint32_t i) -> std::string {
        if (i == 0) return reject(1);  // odd position: not 6^n
        emit_t3_countdown("fj" + num(i), i, "fin.n" + num(i), reject(0));
        return home("fi.h" + num(i), "fj" + num(i) + ".cd" + num(i) + ".start",
                    1);
      },
      reject(1));
  // Record n and the next expected exponent 2n, or accept if 2n > M.
  for (uint32_t n = 1; n <= M; ++n) {
    std::string pre = "fin.n" + num(n);
    go(pre, "***", "---", Move::RightMove, 12 + 8 * n, pre + ".wn", pre + ".o");
    if (2 * n > M) {
      b.any(pre + ".wn", "--1", Move::LeftMove, "acc.w0");
    } else {
      b.any(pre + ".wn", "--1", Move::LeftMove, home(pre + ".h", pre + ".wt", 0));
      go(pre + ".wt", "***", "---", Move::RightMove, 14 + 8 * (2 * n),
         pre + ".wtw", pre + ".t");
      b.any(pre + ".wtw", "--1", Move::LeftMove,
            home(pre + ".h2", "clean.go", 0));
    }
  }

  // Later member at expected exponent T: exactly T halvings, then the
  // 3-exponent must also be T.
  for (uint32_t T = 2; T <= M; ++T) {
    emit_t3_countdown("vj" + num(T), T, "upd.T" + num(T), reject(0));
    emit_t2_count(
        "v2T" + num(T), T,
        [&](uint32_t i) -> std::string {
          if (i != T) return reject(1);
          return home("v2T" + num(T) + ".h",
                      "vj" + num(T) + ".cd" + num(T) + ".start", 1);
        },
        reject(1));
  }
  // Success on a later member: bump T by n (reading the n mark), accept
  // once the next expected exponent passes the frontier.
  for (uint32_t T = 2; T <= M; ++T) {
    std::string pre = "upd.T" + num(T);
    go(pre, "***", "---", Move::RightMove, 20, pre + ".n1", pre + ".o");
    for (uint32_t n = 1; n <= M; ++n) {
      std::string st = pre + ".n" + num(n);  // head at cell 13+8n
      if (n < M)
        go(st, "**0", "---", Move::RightMove, 8, pre + ".n" + num(n + 1),
           st + ".hop");
      else
        b.on_bit(st, kOut, 0, "---", Move::RightMove, "bug");
      if (T + n > M) {
        b.on_bit(st, kOut, 1, "---", Move::LeftMove, "acc.w0");
      } else {
        // erase the old T mark, write the new one at 15+8(T+n)
        std::string et = pre + ".e" + num(n);
        go(st, "**1", "---", Move::RightMove, (15 + 8 * T) - (13 + 8 * n), et,
           st + ".go");
        b.any(et, "--0", Move::RightMove, et + ".fwd");
        go(et + ".fwd", "***", "---", Move::RightMove, 8 * n - 1, et + ".w",
           et + ".t");
        b.any(et + ".w", "--1", Move::LeftMove, home(et + ".h", "clean.go", 0));
      }
    }
  }

  // ---- cleanup: erase paint, read the bookmark's delta destructively,
  // resume the scan at q+1.
  {
    std::string pre = "clean.go";
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
      int resume_mod = ((2 - t) % 8 + 8) % 8;
      go(rb, "**0", "---", Move::LeftMove, 9 * t + 7,
         "sc.m" + num(resume_mod), rb + ".bk");
    }
  }

  // The n/T marks sit on the = 5 and = 7 (mod 8) lattices, so the cleanup
  // pass (which only clears = 0 (mod 4) paint and the = 1 (mod 8) bookmark
  // trail) leaves them alone.

  Program prog = b.build();
  if (prog.branching_width() != 1)
    throw Error(ErrorKind::InvalidChecker,
                "codex generator produced a branching machine");
  return prog;
}

}  // namespace ittm
