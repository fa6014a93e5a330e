#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ittm {

// One CNF term, value w^exponent * coefficient.
struct OrdTerm {
  uint64_t exponent = 0;
  uint64_t coefficient = 0;
  friend bool operator==(const OrdTerm&, const OrdTerm&) = default;
};

// An ordinal below w^w in Cantor normal form: a strictly-decreasing list of
// exponents with positive coefficients. The empty list is 0. Immutable value
// type with structural equality.
class Ordinal {
 public:
  Ordinal() = default;

  static Ordinal from_natural(uint64_t n);
  static Ordinal omega();
  // w^exponent * coefficient (coefficient >= 1).
  static Ordinal single(uint64_t exponent, uint64_t coefficient);
  // Validates decreasing exponents / positive coefficients.
  static Ordinal from_terms(std::vector<OrdTerm> terms);

  const std::vector<OrdTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // The finite part: n where this = mu + n with mu zero-or-limit.
  uint64_t natural_part() const;

  friend bool operator==(const Ordinal&, const Ordinal&) = default;

 private:
  std::vector<OrdTerm> terms_;
};

enum class OrdCmp { Less, Equal, Greater };

OrdCmp ord_compare(const Ordinal& a, const Ordinal& b);
// Ordinal sum in canonical form (left absorption).
Ordinal ord_add(const Ordinal& a, const Ordinal& b);
bool ord_is_limit(const Ordinal& a);
// The least limit ordinal strictly greater than a.
Ordinal ord_next_limit(const Ordinal& a);

inline bool operator<(const Ordinal& a, const Ordinal& b) {
  return ord_compare(a, b) == OrdCmp::Less;
}
inline bool operator<=(const Ordinal& a, const Ordinal& b) {
  return ord_compare(a, b) != OrdCmp::Greater;
}

// Text form used in traces and CLI flags: `w^k*c + ... + n`, `0` for zero,
// exponent-1 terms as `w*c`. Example: w^2*3 + w*1 + 4.
std::string render_ordinal(const Ordinal& a);
Ordinal parse_ordinal(std::string_view text);

}  // namespace ittm
