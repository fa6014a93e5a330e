#include "machine_builder.hpp"

#include "ittm/errors.hpp"

namespace ittm {

MachineBuilder::MachineBuilder(std::string program_name, std::string start_id,
                               std::string limit_id, std::string halt_id)
    : name_(std::move(program_name)),
      start_id_(std::move(start_id)),
      limit_id_(std::move(limit_id)),
      halt_id_(std::move(halt_id)) {
  intern(start_id_);
  intern(limit_id_);
  intern(halt_id_);
}

uint32_t MachineBuilder::intern(const std::string& id) {
  auto it = known_.find(id);
  if (it != known_.end()) return it->second;
  StateKind kind = StateKind::Ordinary;
  if (id == start_id_) kind = StateKind::Start;
  else if (id == limit_id_) kind = StateKind::Limit;
  else if (id == halt_id_) kind = StateKind::Halt;
  uint32_t idx = static_cast<uint32_t>(states_.size());
  states_.push_back({id, kind});
  known_.emplace(id, idx);
  return idx;
}

void MachineBuilder::rule(const std::string& from, const std::string& pattern,
                          const std::string& writes, Move move,
                          const std::string& to) {
  if (pattern.size() != 3 || writes.size() != 3)
    throw Error(ErrorKind::Parse, "builder pattern/writes must have length 3");
  Rule r;
  r.state = intern(from);
  r.pattern = {pattern[0], pattern[1], pattern[2]};
  r.instruction.write_input = writes[0];
  r.instruction.write_scratch = writes[1];
  r.instruction.write_output = writes[2];
  r.instruction.move = move;
  r.instruction.next_state = intern(to);
  rules_.push_back(r);
}

void MachineBuilder::any(const std::string& from, const std::string& writes,
                         Move move, const std::string& to) {
  rule(from, "***", writes, move, to);
}

void MachineBuilder::on_bit(const std::string& from, int tape, int bit,
                            const std::string& writes, Move move,
                            const std::string& to) {
  std::string pattern = "***";
  pattern[tape] = static_cast<char>('0' + bit);
  rule(from, pattern, writes, move, to);
}

std::string MachineBuilder::walk(const std::string& from, Move move,
                                 uint64_t steps, const std::string& label) {
  std::string cur = from;
  for (uint64_t k = 0; k < steps; ++k) {
    std::string next =
        label + ".w" + std::to_string(gensym_++);
    any(cur, "---", move, next);
    cur = next;
  }
  return cur;
}

Program MachineBuilder::build() {
  return Program(name_, states_, rules_);
}

}  // namespace ittm
