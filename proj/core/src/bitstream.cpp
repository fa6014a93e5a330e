#include "ittm/bitstream.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "ittm/errors.hpp"

namespace ittm {

namespace {

void check_bits(const std::string& w, const char* what) {
  for (char c : w)
    if (c != '0' && c != '1')
      throw Error(ErrorKind::Parse,
                  std::string(what) + " must consist of 0/1 bits");
}

std::vector<uint64_t> sorted_unique(std::vector<uint64_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  for (uint64_t p : v)
    if (p == 0)
      throw Error(ErrorKind::InvalidPosition, "stream positions are 1-indexed");
  return v;
}

}  // namespace

BitStream::BitStream(Repr r) : repr_(std::make_shared<const Repr>(std::move(r))) {}

BitStream::BitStream() : BitStream(Repr{PeriodicRepr{"", "0"}}) {}

BitStream BitStream::periodic(std::string prefix, std::string period) {
  check_bits(prefix, "prefix");
  check_bits(period, "period");
  if (period.empty())
    throw Error(ErrorKind::Parse, "period word must be nonempty");
  return BitStream(Repr{PeriodicRepr{std::move(prefix), std::move(period)}});
}

BitStream BitStream::all_zero() { return BitStream(); }

BitStream BitStream::all_ones() { return periodic("", "1"); }

BitStream BitStream::finite_support(std::vector<uint64_t> positions) {
  return BitStream(Repr{SupportRepr{sorted_unique(std::move(positions))}});
}

BitStream BitStream::geometric(std::vector<GeomFamily> families,
                               std::vector<uint64_t> support) {
  for (const auto& f : families) {
    if (f.first == 0)
      throw Error(ErrorKind::InvalidPosition, "family base must be >= 1");
    if (f.ratio < 2)
      throw Error(ErrorKind::Parse, "family ratio must be >= 2");
  }
  std::sort(families.begin(), families.end(),
            [](const GeomFamily& a, const GeomFamily& b) {
              return a.first != b.first ? a.first < b.first : a.ratio < b.ratio;
            });
  families.erase(std::unique(families.begin(), families.end()), families.end());
  return BitStream(
      Repr{GeometricRepr{std::move(families), sorted_unique(std::move(support))}});
}

bool BitStream::is_periodic() const {
  return std::holds_alternative<PeriodicRepr>(*repr_);
}

bool BitStream::is_query() const { return !is_periodic(); }

bool BitStream::is_geometric() const {
  return std::holds_alternative<GeometricRepr>(*repr_);
}

const PeriodicRepr& BitStream::as_periodic() const {
  if (!is_periodic())
    throw Error(ErrorKind::UndecidableComparison,
                "operation requires a periodic stream");
  return std::get<PeriodicRepr>(*repr_);
}

int bit_at(const BitStream& s, uint64_t pos) {
  if (pos == 0)
    throw Error(ErrorKind::InvalidPosition, "cells are 1-indexed");
  const auto& r = s.repr();
  if (const auto* p = std::get_if<PeriodicRepr>(&r)) {
    if (pos <= p->prefix.size()) return p->prefix[pos - 1] - '0';
    uint64_t off = (pos - p->prefix.size() - 1) % p->period.size();
    return p->period[off] - '0';
  }
  if (const auto* f = std::get_if<SupportRepr>(&r)) {
    return std::binary_search(f->positions.begin(), f->positions.end(), pos)
               ? 1
               : 0;
  }
  const auto& g = std::get<GeometricRepr>(r);
  if (std::binary_search(g.support.begin(), g.support.end(), pos)) return 1;
  for (const auto& fam : g.families) {
    uint64_t v = fam.first;
    while (v < pos) {
      if (v > pos / fam.ratio) { v = 0; break; }  // v*ratio would overflow past pos
      v *= fam.ratio;
    }
    if (v == pos) return 1;
  }
  return 0;
}

BitStream write_bit(const BitStream& s, uint64_t pos, int bit) {
  if (pos == 0)
    throw Error(ErrorKind::InvalidPosition, "cells are 1-indexed");
  if (s.is_query())
    throw Error(ErrorKind::ReadOnlyStream,
                "cannot write to a query-form stream");
  const auto& p = s.as_periodic();
  if (bit_at(s, pos) == bit) return s;  // idempotent write
  std::string prefix = p.prefix;
  std::string period = p.period;
  if (pos > prefix.size()) {
    // Materialize the period far enough to cover pos, then rotate the period
    // so the continuation after the new prefix is unchanged.
    uint64_t need = pos - prefix.size();
    uint64_t rot = need % period.size();
    for (uint64_t i = 0; i < need; ++i)
      prefix += period[i % period.size()];
    period = period.substr(rot) + period.substr(0, rot);
  }
  prefix[pos - 1] = static_cast<char>('0' + bit);
  return canonicalize(BitStream::periodic(std::move(prefix), std::move(period)));
}

namespace {

// Minimal period of u^w divides |u| (Fine and Wilf).
std::string minimal_period(const std::string& period) {
  size_t n = period.size();
  for (size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (size_t i = d; i < n && ok; ++i) ok = period[i] == period[i % d];
    if (ok) return period.substr(0, d);
  }
  return period;
}

BitStream canonicalize_periodic(PeriodicRepr p) {
  p.period = minimal_period(p.period);
  // Absorb prefix characters that agree with the rotated period.
  while (!p.prefix.empty() && p.prefix.back() == p.period.back()) {
    p.period = p.period.back() + p.period.substr(0, p.period.size() - 1);
    p.prefix.pop_back();
  }
  p.period = minimal_period(p.period);
  return BitStream::periodic(std::move(p.prefix), std::move(p.period));
}

}  // namespace

BitStream canonicalize(const BitStream& s) {
  const auto& r = s.repr();
  if (const auto* p = std::get_if<PeriodicRepr>(&r))
    return canonicalize_periodic(*p);
  if (const auto* f = std::get_if<SupportRepr>(&r)) {
    if (f->positions.empty()) return BitStream::all_zero();
    std::string prefix(f->positions.back(), '0');
    for (uint64_t pos : f->positions) prefix[pos - 1] = '1';
    return canonicalize_periodic({std::move(prefix), "0"});
  }
  const auto& g = std::get<GeometricRepr>(r);
  if (g.families.empty())
    return canonicalize(BitStream::finite_support(g.support));
  return BitStream::geometric(g.families, g.support);  // already sorted form
}

bool agree_shifted(const BitStream& s1, const BitStream& s2, uint64_t d,
                   uint64_t from) {
  if (from == 0)
    throw Error(ErrorKind::InvalidPosition, "cells are 1-indexed");
  const auto& p1 = s1.as_periodic();
  const auto& p2 = s2.as_periodic();
  uint64_t l = std::lcm<uint64_t>(p1.period.size(), p2.period.size());
  // Beyond both prefixes the pair of sequences (c -> s1(c), c -> s2(c+d))
  // is periodic with period l, so one full window past the prefixes decides.
  uint64_t hi = std::max<uint64_t>(p1.prefix.size(),
                                   p2.prefix.size() > d ? p2.prefix.size() - d : 0);
  uint64_t end = std::max(from, hi) + l;
  for (uint64_t c = from; c <= end; ++c)
    if (bit_at(s1, c) != bit_at(s2, c + d)) return false;
  return true;
}

bool shift_eq(const BitStream& s1, const BitStream& s2, uint64_t d) {
  return agree_shifted(s1, s2, d, 1);
}

bool canonical_equal(const BitStream& a, const BitStream& b) {
  BitStream ca = canonicalize(a);
  BitStream cb = canonicalize(b);
  if (ca.is_periodic() != cb.is_periodic()) return false;
  if (ca.is_periodic()) {
    const auto& pa = ca.as_periodic();
    const auto& pb = cb.as_periodic();
    return pa.prefix == pb.prefix && pa.period == pb.period;
  }
  const auto& ga = std::get<GeometricRepr>(ca.repr());
  const auto& gb = std::get<GeometricRepr>(cb.repr());
  return ga.families == gb.families && ga.support == gb.support;
}

namespace {

std::vector<uint64_t> parse_position_list(std::string_view text, size_t& pos) {
  std::vector<uint64_t> out;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    uint64_t v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + static_cast<uint64_t>(text[pos] - '0');
      ++pos;
    }
    out.push_back(v);
    if (pos < text.size() && text[pos] == ',' && pos + 1 < text.size() &&
        std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
      ++pos;
      continue;
    }
    break;
  }
  return out;
}

}  // namespace

std::string render_stream_spec(const BitStream& s) {
  const auto& r = s.repr();
  if (const auto* p = std::get_if<PeriodicRepr>(&r))
    return "prefix=" + p->prefix + ",period=" + p->period;
  if (const auto* f = std::get_if<SupportRepr>(&r)) {
    std::string out = "support=";
    for (size_t i = 0; i < f->positions.size(); ++i) {
      if (i > 0) out += ",";
      out += std::to_string(f->positions[i]);
    }
    return out;
  }
  const auto& g = std::get<GeometricRepr>(r);
  std::string out;
  for (size_t i = 0; i < g.families.size(); ++i) {
    if (i > 0) out += "+";
    out += "family=" + std::to_string(g.families[i].first) + "x" +
           std::to_string(g.families[i].ratio) + "^k";
  }
  if (!g.support.empty()) {
    out += "+support=";
    for (size_t i = 0; i < g.support.size(); ++i) {
      if (i > 0) out += ",";
      out += std::to_string(g.support[i]);
    }
  }
  return out;
}

BitStream parse_stream_spec(std::string_view text) {
  auto fail = [&](const char* msg) -> BitStream {
    throw ParseError(std::string("bad stream spec: ") + msg, 1, 1);
  };
  if (text.rfind("prefix=", 0) == 0) {
    size_t comma = text.find(",period=");
    if (comma == std::string_view::npos) return fail("expected ,period=");
    std::string prefix(text.substr(7, comma - 7));
    std::string period(text.substr(comma + 8));
    if (period.empty()) period = "0";
    return BitStream::periodic(std::move(prefix), std::move(period));
  }
  if (text.rfind("support=", 0) == 0) {
    size_t pos = 8;
    auto positions = parse_position_list(text, pos);
    if (pos != text.size()) return fail("trailing characters in support list");
    return BitStream::finite_support(std::move(positions));
  }
  if (text.rfind("family=", 0) == 0) {
    std::vector<GeomFamily> families;
    std::vector<uint64_t> support;
    size_t pos = 0;
    while (pos < text.size()) {
      if (text.compare(pos, 7, "family=") == 0) {
        pos += 7;
        auto a = parse_position_list(text, pos);
        if (a.size() != 1 || pos >= text.size() || text[pos] != 'x')
          return fail("expected <a>x<b>^k in family");
        ++pos;
        auto b = parse_position_list(text, pos);
        if (b.size() != 1 || text.compare(pos, 2, "^k") != 0)
          return fail("expected <a>x<b>^k in family");
        pos += 2;
        families.push_back({a[0], b[0]});
      } else if (text.compare(pos, 8, "support=") == 0) {
        pos += 8;
        support = parse_position_list(text, pos);
      } else {
        return fail("expected family= or support= segment");
      }
      if (pos < text.size()) {
        if (text[pos] != '+') return fail("expected + between segments");
        ++pos;
      }
    }
    return BitStream::geometric(std::move(families), std::move(support));
  }
  return fail("expected prefix=, support= or family=");
}

}  // namespace ittm
