#include "ittm/policy.hpp"

#include <algorithm>
#include <set>

#include "ittm/errors.hpp"

namespace ittm {

uint32_t policy_entry(const ChoicePolicy& p, uint64_t n) {
  if (n < p.script.size()) return p.script[n];
  return p.tail[(n - p.script.size()) % p.tail.size()];
}

namespace {

std::vector<uint32_t> minimal_tail(const std::vector<uint32_t>& tail) {
  size_t n = tail.size();
  for (size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (size_t i = d; i < n && ok; ++i) ok = tail[i] == tail[i % d];
    if (ok) return {tail.begin(), tail.begin() + static_cast<long>(d)};
  }
  return tail;
}

}  // namespace

ChoicePolicy canonicalize_policy(const ChoicePolicy& p) {
  ChoicePolicy out = p;
  if (out.tail.empty()) out.tail = {0};
  out.tail = minimal_tail(out.tail);
  while (!out.script.empty() && out.script.back() == out.tail.back()) {
    std::rotate(out.tail.rbegin(), out.tail.rbegin() + 1, out.tail.rend());
    out.script.pop_back();
  }
  out.tail = minimal_tail(out.tail);
  return out;
}

bool policy_less(const ChoicePolicy& a, const ChoicePolicy& b) {
  if (a.script.size() != b.script.size())
    return a.script.size() < b.script.size();
  if (a.script != b.script) return a.script < b.script;
  if (a.tail.size() != b.tail.size()) return a.tail.size() < b.tail.size();
  return a.tail < b.tail;
}

std::vector<ChoicePolicy> enumerate_policies(uint32_t width,
                                             uint32_t max_script,
                                             uint32_t max_tail) {
  if (width == 0) width = 1;
  if (max_tail == 0) max_tail = 1;
  auto words = [&](uint32_t max_len, bool allow_empty) {
    std::vector<std::vector<uint32_t>> out;
    if (allow_empty) out.push_back({});
    std::vector<std::vector<uint32_t>> frontier{{}};
    for (uint32_t len = 1; len <= max_len; ++len) {
      std::vector<std::vector<uint32_t>> next;
      for (const auto& w : frontier)
        for (uint32_t c = 0; c < width; ++c) {
          auto e = w;
          e.push_back(c);
          next.push_back(std::move(e));
        }
      for (const auto& w : next) out.push_back(w);
      frontier = std::move(next);
    }
    return out;
  };

  auto cmp = [](const ChoicePolicy& a, const ChoicePolicy& b) {
    return policy_less(a, b);
  };
  std::set<ChoicePolicy, decltype(cmp)> dedup(cmp);
  for (const auto& script : words(max_script, true))
    for (const auto& tail : words(max_tail, false))
      dedup.insert(canonicalize_policy({script, tail}));
  return {dedup.begin(), dedup.end()};
}

uint32_t PolicyCursor::choose(uint32_t alternatives) {
  uint32_t entry = policy_entry(*policy_, consumed_);
  ++consumed_;
  return alternatives == 0 ? entry : entry % alternatives;
}

bool cursor_aligned(const ChoicePolicy& p, uint64_t at_m, uint64_t at_n) {
  if (at_m == at_n) return true;
  return at_m >= p.script.size() && (at_n - at_m) % p.tail.size() == 0;
}

ChoicePolicy parse_policy_spec(std::string_view text) {
  auto digits = [](std::string_view s, const char* what) {
    std::vector<uint32_t> out;
    for (char c : s) {
      if (c == ',') continue;
      if (c < '0' || c > '9')
        throw ParseError(std::string("bad ") + what + " digit in policy spec",
                         1, 1);
      out.push_back(static_cast<uint32_t>(c - '0'));
    }
    return out;
  };
  ChoicePolicy p;
  p.tail = {0};
  // `,tail=` and `;tail=` both separate the segments, so
  // `script=0,1,tail=01` parses the way it reads.
  std::string norm(text);
  for (size_t at = norm.find(",tail="); at != std::string::npos;
       at = norm.find(",tail=", at + 1))
    norm[at] = ';';
  text = norm;
  size_t pos = 0;
  bool saw_any = false;
  while (pos < text.size()) {
    size_t end = text.find(';', pos);
    std::string_view seg = text.substr(
        pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    if (seg.rfind("script=", 0) == 0) {
      p.script = digits(seg.substr(7), "script");
      saw_any = true;
    } else if (seg.rfind("tail=", 0) == 0) {
      auto t = digits(seg.substr(5), "tail");
      if (!t.empty()) p.tail = std::move(t);
      saw_any = true;
    } else if (!seg.empty()) {
      // Bare digits mean a script with the default tail repeating its last
      // entry, so `--policy 01` explores the branch word 0,1,1,1,...
      p.script = digits(seg, "script");
      if (!p.script.empty()) p.tail = {p.script.back()};
      saw_any = true;
    }
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  if (!saw_any) throw ParseError("empty policy spec", 1, 1);
  return p;
}

std::string render_policy_spec(const ChoicePolicy& p) {
  std::string out = "script=";
  for (uint32_t c : p.script) out += std::to_string(c);
  out += ";tail=";
  for (uint32_t c : p.tail) out += std::to_string(c);
  return out;
}

}  // namespace ittm
