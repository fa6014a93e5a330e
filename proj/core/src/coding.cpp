#include "ittm/coding.hpp"

#include <algorithm>
#include <numeric>

#include "ittm/errors.hpp"

namespace ittm {

uint32_t ProgramRegistry::add(Program program) {
  for (const auto& p : programs_)
    if (p.name() == program.name())
      throw Error(ErrorKind::MalformedCode,
                  "registry already holds a program named " + program.name());
  programs_.push_back(std::move(program));
  return static_cast<uint32_t>(programs_.size() - 1);
}

const Program& ProgramRegistry::by_index(uint32_t idx) const {
  if (idx >= programs_.size())
    throw Error(ErrorKind::MalformedCode, "program index out of range");
  return programs_[idx];
}

const Program* ProgramRegistry::by_name(std::string_view name) const {
  for (const auto& p : programs_)
    if (p.name() == name) return &p;
  return nullptr;
}

uint32_t ProgramRegistry::index_of(std::string_view name) const {
  for (uint32_t i = 0; i < programs_.size(); ++i)
    if (programs_[i].name() == name) return i;
  throw Error(ErrorKind::MalformedCode,
              "program '" + std::string(name) + "' not registered");
}

uint64_t pos_of_pair(uint64_t i, uint64_t j) {
  constexpr uint64_t kMax = UINT64_MAX;
  uint64_t v = 1;
  for (uint64_t k = 0; k < i; ++k) {
    if (v > kMax / 2) throw Error(ErrorKind::Range, "pair position overflows");
    v *= 2;
  }
  for (uint64_t k = 0; k < j; ++k) {
    if (v > kMax / 3) throw Error(ErrorKind::Range, "pair position overflows");
    v *= 3;
  }
  return v;
}

std::optional<std::pair<uint64_t, uint64_t>> pair_of_pos(uint64_t pos) {
  if (pos == 0) return std::nullopt;
  uint64_t i = 0, j = 0;
  while (pos % 2 == 0) { pos /= 2; ++i; }
  while (pos % 3 == 0) { pos /= 3; ++j; }
  if (pos != 1) return std::nullopt;
  return std::make_pair(i, j);
}

BitStream encode_relation(const RelationCode& rel) {
  std::vector<uint64_t> positions;
  positions.reserve(rel.pairs.size());
  for (const auto& [i, j] : rel.pairs) positions.push_back(pos_of_pair(i, j));
  return BitStream::finite_support(std::move(positions));
}

namespace {

// The finite set of 1-positions of a stream that must have finite support.
std::vector<uint64_t> finite_support_of(const BitStream& s) {
  const auto& r = s.repr();
  if (const auto* f = std::get_if<SupportRepr>(&r)) return f->positions;
  if (const auto* p = std::get_if<PeriodicRepr>(&r)) {
    for (char c : p->period)
      if (c == '1')
        throw Error(ErrorKind::MalformedCode,
                    "stream has infinite support; not a finite code");
    std::vector<uint64_t> out;
    for (size_t i = 0; i < p->prefix.size(); ++i)
      if (p->prefix[i] == '1') out.push_back(i + 1);
    return out;
  }
  throw Error(ErrorKind::MalformedCode,
              "geometric streams are not finite relation codes");
}

}  // namespace

RelationCode decode_relation(const BitStream& s, uint64_t field_bound) {
  RelationCode rel;
  for (uint64_t pos : finite_support_of(s)) {
    auto ij = pair_of_pos(pos);
    if (!ij)
      throw Error(ErrorKind::MalformedCode,
                  "1 at position " + std::to_string(pos) +
                      " which is not of the form 2^i*3^j");
    if (ij->first > field_bound || ij->second > field_bound)
      throw Error(ErrorKind::MalformedCode,
                  "pair (" + std::to_string(ij->first) + "," +
                      std::to_string(ij->second) + ") exceeds field bound");
    rel.pairs.insert(*ij);
  }
  return rel;
}

Natural cantor_pair(const Natural& a, const Natural& b) {
  Natural s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<Natural, Natural> cantor_unpair(const Natural& z) {
  // s = floor((sqrt(8z+1)-1)/2)
  Natural arg = 8 * z + 1;
  Natural w = boost::multiprecision::sqrt(arg);
  Natural s = (w - 1) / 2;
  Natural t = s * (s + 1) / 2;
  Natural b = z - t;
  Natural a = s - b;
  return {a, b};
}

namespace {

// Injective word <-> numeral map: the numeral reads 1 then the word's bits
// in binary, so leading zeros are preserved.
Natural word_to_numeral(const std::string& bits) {
  Natural v = 1;
  for (char c : bits) v = v * 2 + (c - '0');
  return v;
}

std::string numeral_to_word(Natural v) {
  if (v < 1)
    throw Error(ErrorKind::MalformedCode, "word numeral must be positive");
  std::string bits;
  while (v > 1) {
    bits += static_cast<char>('0' + static_cast<int>(v % 2));
    v /= 2;
  }
  std::reverse(bits.begin(), bits.end());
  return bits;
}

Natural encode_list(const std::vector<Natural>& items) {
  Natural acc = 0;
  for (auto it = items.rbegin(); it != items.rend(); ++it)
    acc = cantor_pair(*it, acc);
  return cantor_pair(Natural(items.size()), acc);
}

std::vector<Natural> decode_list(const Natural& code) {
  auto [len, acc] = cantor_unpair(code);
  if (len > 1000000)
    throw Error(ErrorKind::MalformedCode, "implausible coded list length");
  std::vector<Natural> items;
  Natural rest = acc;
  for (Natural k = 0; k < len; ++k) {
    auto [head, tail] = cantor_unpair(rest);
    items.push_back(head);
    rest = tail;
  }
  return items;
}

Natural encode_stream(const BitStream& s) {
  if (s.is_query())
    throw Error(ErrorKind::NotEncodable,
                "query-form streams have no snapshot code");
  BitStream c = canonicalize(s);
  const auto& p = c.as_periodic();
  return cantor_pair(word_to_numeral(p.prefix), word_to_numeral(p.period));
}

BitStream decode_stream(const Natural& code) {
  auto [pre, per] = cantor_unpair(code);
  std::string period = numeral_to_word(per);
  if (period.empty())
    throw Error(ErrorKind::MalformedCode, "coded stream has empty period");
  return BitStream::periodic(numeral_to_word(pre), period);
}

Natural encode_stage(const Ordinal& stage) {
  std::vector<Natural> parts;
  for (const auto& t : stage.terms()) {
    parts.push_back(Natural(t.exponent));
    parts.push_back(Natural(t.coefficient));
  }
  return encode_list(parts);
}

Ordinal decode_stage(const Natural& code) {
  auto parts = decode_list(code);
  if (parts.size() % 2 != 0)
    throw Error(ErrorKind::MalformedCode, "stage code has odd term list");
  std::vector<OrdTerm> terms;
  for (size_t i = 0; i < parts.size(); i += 2) {
    if (parts[i] > UINT64_MAX || parts[i + 1] > UINT64_MAX)
      throw Error(ErrorKind::MalformedCode, "stage term out of range");
    terms.push_back({static_cast<uint64_t>(parts[i]),
                     static_cast<uint64_t>(parts[i + 1])});
  }
  return Ordinal::from_terms(std::move(terms));
}

}  // namespace

SnapshotCode encode_snapshot(const Snapshot& snap, const ProgramRegistry& reg) {
  uint32_t pidx = reg.index_of(snap.program);
  const Program& prog = reg.by_index(pidx);
  auto sidx = prog.state_index(snap.state);
  if (!sidx)
    throw Error(ErrorKind::NotEncodable,
                "snapshot state not present in registered program");
  std::vector<Natural> fields{
      Natural(pidx),
      Natural(snap.head),
      Natural(*sidx),
      encode_stage(snap.stage),
      encode_stream(snap.tapes.input),
      encode_stream(snap.tapes.scratch),
      encode_stream(snap.tapes.output),
  };
  return SnapshotCode{encode_list(fields)};
}

Snapshot decode_snapshot(const SnapshotCode& code, const ProgramRegistry& reg) {
  auto fields = decode_list(code.value);
  if (fields.size() != 7)
    throw Error(ErrorKind::MalformedCode, "snapshot code has wrong arity");
  if (fields[0] > UINT32_MAX || fields[1] > UINT64_MAX || fields[2] > UINT32_MAX)
    throw Error(ErrorKind::MalformedCode, "snapshot code field out of range");
  const Program& prog = reg.by_index(static_cast<uint32_t>(fields[0]));
  uint32_t sidx = static_cast<uint32_t>(fields[2]);
  if (sidx >= prog.states().size())
    throw Error(ErrorKind::MalformedCode, "snapshot state index out of range");
  Snapshot snap;
  snap.program = prog.name();
  snap.head = static_cast<uint64_t>(fields[1]);
  if (snap.head == 0)
    throw Error(ErrorKind::MalformedCode, "snapshot head must be >= 1");
  snap.state = prog.state(sidx).id;
  snap.state_kind = prog.state(sidx).kind;
  snap.stage = decode_stage(fields[3]);
  snap.tapes.input = decode_stream(fields[4]);
  snap.tapes.scratch = decode_stream(fields[5]);
  snap.tapes.output = decode_stream(fields[6]);
  return snap;
}

RunCode encode_run(const std::vector<Snapshot>& trace,
                   const ProgramRegistry& reg) {
  std::vector<uint64_t> positions;
  for (size_t k = 0; k < trace.size(); ++k) {
    // Row k holds the binary expansion of code+1, LSB first, so every coded
    // item has a nonempty row and the row count delimits the trace.
    Natural v = encode_snapshot(trace[k], reg).value + 1;
    uint64_t b = 0;
    while (v > 0) {
      if (v % 2 == 1) {
        Natural pos = cantor_pair(Natural(k), Natural(b)) + 1;
        if (pos > UINT64_MAX)
          throw Error(ErrorKind::Range, "run code position overflows");
        positions.push_back(static_cast<uint64_t>(pos));
      }
      v /= 2;
      ++b;
    }
  }
  return RunCode{BitStream::finite_support(std::move(positions))};
}

std::vector<Snapshot> decode_run(const RunCode& code,
                                 const ProgramRegistry& reg) {
  std::vector<std::vector<uint64_t>> rows;
  for (uint64_t pos : finite_support_of(code.value)) {
    auto [k_nat, b_nat] = cantor_unpair(Natural(pos) - 1);
    if (k_nat > 1000000 || b_nat > 100000000)
      throw Error(ErrorKind::MalformedCode, "run code position implausible");
    size_t k = static_cast<size_t>(k_nat);
    uint64_t b = static_cast<uint64_t>(b_nat);
    if (rows.size() <= k) rows.resize(k + 1);
    rows[k].push_back(b);
  }
  std::vector<Snapshot> trace;
  for (size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].empty())
      throw Error(ErrorKind::MalformedCode,
                  "run code is missing row " + std::to_string(k));
    Natural v = 0;
    for (uint64_t b : rows[k]) v += Natural(1) << b;
    trace.push_back(decode_snapshot(SnapshotCode{v - 1}, reg));
  }
  return trace;
}

BitStream pair_real(const BitStream& a, const BitStream& b) {
  if (a.is_query() || b.is_query())
    throw Error(ErrorKind::NotEncodable, "pair_real requires periodic streams");
  const auto& pa = canonicalize(a).as_periodic();
  const auto& pb = canonicalize(b).as_periodic();
  uint64_t pre = 2 * std::max(pa.prefix.size(), pb.prefix.size());
  uint64_t per = 2 * std::lcm<uint64_t>(pa.period.size(), pb.period.size());
  std::string prefix(pre, '0'), period(per, '0');
  auto at = [&](uint64_t pos) {
    // result(2k-1) = a(k), result(2k) = b(k)
    return pos % 2 == 1 ? bit_at(a, (pos + 1) / 2) : bit_at(b, pos / 2);
  };
  for (uint64_t i = 0; i < pre; ++i)
    prefix[i] = static_cast<char>('0' + at(i + 1));
  for (uint64_t i = 0; i < per; ++i)
    period[i] = static_cast<char>('0' + at(pre + i + 1));
  return canonicalize(BitStream::periodic(std::move(prefix), std::move(period)));
}

std::pair<BitStream, BitStream> unpair_real(const BitStream& s) {
  if (s.is_query())
    throw Error(ErrorKind::NotEncodable, "unpair_real requires a periodic stream");
  const auto& p = canonicalize(s).as_periodic();
  uint64_t pre = p.prefix.size() / 2 + 1;
  uint64_t per = p.period.size();
  auto build = [&](bool odd) {
    std::string prefix(pre, '0'), period(per, '0');
    auto src = [&](uint64_t k) {
      return bit_at(s, odd ? 2 * k - 1 : 2 * k);
    };
    for (uint64_t k = 1; k <= pre; ++k)
      prefix[k - 1] = static_cast<char>('0' + src(k));
    for (uint64_t i = 0; i < per; ++i)
      period[i] = static_cast<char>('0' + src(pre + i + 1));
    return canonicalize(BitStream::periodic(std::move(prefix), std::move(period)));
  };
  return {build(true), build(false)};
}

}  // namespace ittm
