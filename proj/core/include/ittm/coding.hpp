#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "ittm/machine.hpp"

namespace ittm {

using Natural = boost::multiprecision::cpp_int;

// A finite relation on the naturals, the carrier for well-order codes.
struct RelationCode {
  std::set<std::pair<uint64_t, uint64_t>> pairs;
  friend bool operator==(const RelationCode&, const RelationCode&) = default;
};

// Gödel code of one snapshot.
struct SnapshotCode {
  Natural value;
  friend bool operator==(const SnapshotCode&, const SnapshotCode&) = default;
};

// A finite snapshot sequence coded as a single stream ("real").
struct RunCode {
  BitStream value;
};

// Programs a code can refer to; the index of a program in registration
// order is part of its snapshots' codes.
class ProgramRegistry {
 public:
  uint32_t add(Program program);
  const Program& by_index(uint32_t idx) const;
  const Program* by_name(std::string_view name) const;
  uint32_t index_of(std::string_view name) const;  // throws MalformedCode
  size_t size() const { return programs_.size(); }

 private:
  std::vector<Program> programs_;
};

// Position of the (i, j) pair marker: 2^i * 3^j. Throws Range past 64 bits.
uint64_t pos_of_pair(uint64_t i, uint64_t j);
// Inverse when pos is of that form.
std::optional<std::pair<uint64_t, uint64_t>> pair_of_pos(uint64_t pos);

// Relation <-> stream with 1s exactly at pos_of_pair positions.
BitStream encode_relation(const RelationCode& rel);
RelationCode decode_relation(const BitStream& s, uint64_t field_bound);

// Cantor pairing on unbounded naturals (building block of the snapshot
// codes; fixed so codes are stable across runs and implementations).
Natural cantor_pair(const Natural& a, const Natural& b);
std::pair<Natural, Natural> cantor_unpair(const Natural& z);

// Injective snapshot code: iterated Cantor pairing over the field order
// (program index, head, state index, stage terms, input, scratch, output),
// streams as bit-word numerals. Periodic tapes only.
SnapshotCode encode_snapshot(const Snapshot& snap, const ProgramRegistry& reg);
Snapshot decode_snapshot(const SnapshotCode& code, const ProgramRegistry& reg);

// Finite trace <-> one stream: bit b of snapshot k's code (+1, so rows are
// self-delimiting) sits at position cantor(k, b) + 1.
RunCode encode_run(const std::vector<Snapshot>& trace,
                   const ProgramRegistry& reg);
std::vector<Snapshot> decode_run(const RunCode& code,
                                 const ProgramRegistry& reg);

// Interleaving pairing of two streams: result(2k-1) = a(k), result(2k) = b(k).
BitStream pair_real(const BitStream& a, const BitStream& b);
std::pair<BitStream, BitStream> unpair_real(const BitStream& s);

}  // namespace ittm
