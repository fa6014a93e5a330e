#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ittm {

// prefix then period repeated forever; bits are '0'/'1' chars. The writable
// stream form.
struct PeriodicRepr {
  std::string prefix;
  std::string period;  // nonempty
};

// Finitely many 1s, given by their (1-indexed) positions. Query form, but
// canonicalize() turns it into an equivalent PeriodicRepr.
struct SupportRepr {
  std::vector<uint64_t> positions;  // sorted, unique, >= 1
};

// 1s at a*b^k for k >= 0.
struct GeomFamily {
  uint64_t first;  // a >= 1
  uint64_t ratio;  // b >= 2
  friend bool operator==(const GeomFamily&, const GeomFamily&) = default;
};

// Union of geometric families plus a finite support set. Read-only query
// form; not eventually periodic in general.
struct GeometricRepr {
  std::vector<GeomFamily> families;
  std::vector<uint64_t> support;
};

// A finitely-described infinite binary sequence over 1-indexed cells.
// Cheap to copy (shared immutable representation).
class BitStream {
 public:
  using Repr = std::variant<PeriodicRepr, SupportRepr, GeometricRepr>;

  BitStream();  // all-zero
  static BitStream periodic(std::string prefix, std::string period);
  static BitStream all_zero();
  static BitStream all_ones();
  static BitStream finite_support(std::vector<uint64_t> positions);
  static BitStream geometric(std::vector<GeomFamily> families,
                             std::vector<uint64_t> support = {});

  bool is_periodic() const;
  // Query = not writable: finite-support or geometric descriptor.
  bool is_query() const;
  bool is_geometric() const;

  const Repr& repr() const { return *repr_; }
  const PeriodicRepr& as_periodic() const;

 private:
  explicit BitStream(Repr r);
  std::shared_ptr<const Repr> repr_;
};

int bit_at(const BitStream& s, uint64_t pos);
// Returns a periodic stream equal to s except at pos. Throws
// ReadOnlyStream for query forms.
BitStream write_bit(const BitStream& s, uint64_t pos, int bit);
// Minimal-period minimal-prefix form; finite-support becomes periodic.
// Equal streams (as functions) canonicalize identically.
BitStream canonicalize(const BitStream& s);
// True iff s1(c) == s2(c + d) for all c >= 1. Both streams must be periodic.
bool shift_eq(const BitStream& s1, const BitStream& s2, uint64_t d);
// Same but only for c >= from (from >= 1). Used by the recurrence
// certificate, which ignores cells abandoned left of the drift window.
bool agree_shifted(const BitStream& s1, const BitStream& s2, uint64_t d,
                   uint64_t from);
// Equality as functions N+ -> bits (decidable for all descriptor forms).
bool canonical_equal(const BitStream& a, const BitStream& b);

// CLI grammar: `prefix=<bits>,period=<bits>` | `support=<p1>,<p2>,...` |
// `family=<a>x<b>^k[+family=...][+support=...]`.
std::string render_stream_spec(const BitStream& s);
BitStream parse_stream_spec(std::string_view text);

// Three named tapes sharing one head.
struct TapeTriple {
  BitStream input;
  BitStream scratch;
  BitStream output;
};

}  // namespace ittm
