#pragma once

#include <map>
#include <string>
#include <vector>

#include "ittm/machine.hpp"

namespace ittm {

// Internal helper for assembling generated programs. States are declared on
// first use; kinds are fixed by the constructor's start/limit/halt ids.
class MachineBuilder {
 public:
  MachineBuilder(std::string program_name, std::string start_id,
                 std::string limit_id, std::string halt_id);

  const std::string& start() const { return start_id_; }
  const std::string& limit() const { return limit_id_; }
  const std::string& halt() const { return halt_id_; }

  // pattern: three of "01*"; writes: three of "01-".
  void rule(const std::string& from, const std::string& pattern,
            const std::string& writes, Move move, const std::string& to);
  // Shorthand for a rule matching every read.
  void any(const std::string& from, const std::string& writes, Move move,
           const std::string& to);
  // Branch on one tape's bit, keeping everything else: tape in {0,1,2}.
  void on_bit(const std::string& from, int tape, int bit,
              const std::string& writes, Move move, const std::string& to);

  // A chain of n forced right (or left) moves through fresh states,
  // returning the final state id. Used for fixed-offset walks.
  std::string walk(const std::string& from, Move move, uint64_t steps,
                   const std::string& label);

  bool has_state(const std::string& id) const { return known_.count(id) > 0; }

  Program build();

 private:
  uint32_t intern(const std::string& id);

  std::string name_, start_id_, limit_id_, halt_id_;
  std::vector<ProgramState> states_;
  std::map<std::string, uint32_t> known_;
  std::vector<Rule> rules_;
  uint64_t gensym_ = 0;
};

}  // namespace ittm
