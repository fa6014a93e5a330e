#include "ittm/ordinal.hpp"

#include <cctype>
#include <limits>

#include "ittm/errors.hpp"

namespace ittm {

Ordinal Ordinal::from_natural(uint64_t n) {
  Ordinal o;
  if (n > 0) o.terms_.push_back({0, n});
  return o;
}

Ordinal Ordinal::omega() { return single(1, 1); }

Ordinal Ordinal::single(uint64_t exponent, uint64_t coefficient) {
  if (coefficient == 0)
    throw Error(ErrorKind::Range, "CNF coefficient must be positive");
  Ordinal o;
  o.terms_.push_back({exponent, coefficient});
  return o;
}

Ordinal Ordinal::from_terms(std::vector<OrdTerm> terms) {
  for (size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0)
      throw Error(ErrorKind::Range, "CNF coefficient must be positive");
    if (i > 0 && terms[i - 1].exponent <= terms[i].exponent)
      throw Error(ErrorKind::Range, "CNF exponents must strictly decrease");
  }
  Ordinal o;
  o.terms_ = std::move(terms);
  return o;
}

uint64_t Ordinal::natural_part() const {
  if (!terms_.empty() && terms_.back().exponent == 0)
    return terms_.back().coefficient;
  return 0;
}

OrdCmp ord_compare(const Ordinal& a, const Ordinal& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  size_t n = std::min(ta.size(), tb.size());
  for (size_t i = 0; i < n; ++i) {
    if (ta[i].exponent != tb[i].exponent)
      return ta[i].exponent < tb[i].exponent ? OrdCmp::Less : OrdCmp::Greater;
    if (ta[i].coefficient != tb[i].coefficient)
      return ta[i].coefficient < tb[i].coefficient ? OrdCmp::Less
                                                   : OrdCmp::Greater;
  }
  if (ta.size() != tb.size())
    return ta.size() < tb.size() ? OrdCmp::Less : OrdCmp::Greater;
  return OrdCmp::Equal;
}

Ordinal ord_add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  uint64_t lead = b.terms().front().exponent;
  std::vector<OrdTerm> out;
  // Keep the part of a at or above b's leading exponent; lower terms are
  // absorbed.
  for (const auto& t : a.terms()) {
    if (t.exponent >= lead) out.push_back(t);
  }
  size_t bi = 0;
  if (!out.empty() && out.back().exponent == lead) {
    uint64_t sum = out.back().coefficient + b.terms().front().coefficient;
    if (sum < out.back().coefficient)
      throw Error(ErrorKind::Range, "CNF coefficient overflow");
    out.back().coefficient = sum;
    bi = 1;
  }
  for (; bi < b.terms().size(); ++bi) out.push_back(b.terms()[bi]);
  return Ordinal::from_terms(std::move(out));
}

bool ord_is_limit(const Ordinal& a) {
  return !a.is_zero() && a.terms().back().exponent >= 1;
}

Ordinal ord_next_limit(const Ordinal& a) {
  // Strip the finite tail, then add w: that exceeds a itself even when a is
  // already a limit.
  std::vector<OrdTerm> out = a.terms();
  if (!out.empty() && out.back().exponent == 0) out.pop_back();
  if (!out.empty() && out.back().exponent == 1) {
    out.back().coefficient += 1;
  } else {
    out.push_back({1, 1});
  }
  return Ordinal::from_terms(std::move(out));
}

std::string render_ordinal(const Ordinal& a) {
  if (a.is_zero()) return "0";
  std::string s;
  for (size_t i = 0; i < a.terms().size(); ++i) {
    const auto& t = a.terms()[i];
    if (i > 0) s += " + ";
    if (t.exponent == 0) {
      s += std::to_string(t.coefficient);
    } else if (t.exponent == 1) {
      s += "w*" + std::to_string(t.coefficient);
    } else {
      s += "w^" + std::to_string(t.exponent) + "*" +
           std::to_string(t.coefficient);
    }
  }
  return s;
}

namespace {

struct OrdParser {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  uint64_t number() {
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw ParseError("expected number in ordinal", 1,
                       static_cast<int>(pos) + 1);
    uint64_t v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      uint64_t d = static_cast<uint64_t>(text[pos] - '0');
      if (v > (std::numeric_limits<uint64_t>::max() - d) / 10)
        throw ParseError("ordinal number too large", 1,
                         static_cast<int>(pos) + 1);
      v = v * 10 + d;
      ++pos;
    }
    return v;
  }

  OrdTerm term() {
    skip_ws();
    if (pos < text.size() && (text[pos] == 'w' || text[pos] == 'W')) {
      ++pos;
      uint64_t exp = 1;
      if (eat('^')) exp = number();
      if (exp == 0)
        throw ParseError("w^0 is not canonical; write the coefficient alone",
                         1, static_cast<int>(pos) + 1);
      uint64_t coeff = 1;
      if (eat('*')) coeff = number();
      return {exp, coeff};
    }
    return {0, number()};
  }
};

}  // namespace

Ordinal parse_ordinal(std::string_view text) {
  OrdParser p{text};
  p.skip_ws();
  if (p.pos >= text.size())
    throw ParseError("empty ordinal", 1, 1);
  std::vector<OrdTerm> terms;
  terms.push_back(p.term());
  while (p.eat('+')) terms.push_back(p.term());
  p.skip_ws();
  if (p.pos != text.size())
    throw ParseError("trailing characters after ordinal", 1,
                     static_cast<int>(p.pos) + 1);
  // `0` alone denotes zero; a 0 coefficient anywhere else is invalid.
  if (terms.size() == 1 && terms[0].exponent == 0 && terms[0].coefficient == 0)
    return Ordinal();
  return Ordinal::from_terms(std::move(terms));
}

}  // namespace ittm
