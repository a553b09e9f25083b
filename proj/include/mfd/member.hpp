#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mfd/entail.hpp"
#include "mfd/formula.hpp"

namespace mfd {

class ContractingTheory : public std::invalid_argument {
 public:
  explicit ContractingTheory(Mfd offending)
      : std::invalid_argument("theory is contracting at '" + to_string(offending) + "'"),
        offending_(std::move(offending)) {}
  const Mfd& offending() const { return offending_; }

 private:
  Mfd offending_;
};

struct MemberIteration {
  // W at the end of the pass.
  AttributeMultiset snapshot;
  // Rules that rewrote W during the pass, in order.
  std::vector<Mfd> fired;
};

struct MemberTrace {
  std::string fresh_var;
  std::int64_t counter_initial = 0;
  std::int64_t counter_final = 0;
  std::vector<MemberIteration> iterations;
  bool result = false;
  // Rewrites by theory rules only, from A up to the W that the goal rule
  // B => By fired on. Meaningful when `result` is true.
  RewritePath path;
};

struct MemberResult {
  bool result;
  MemberTrace trace;
};

// First name of the form _y0, _y1, ... not used by the theory or query.
std::string fresh_variable(const Theory& theory, const Mfd& query);

// Decides theory |- query for a non-contracting theory.
// 
// Works on W := A with the extra rule B => By. Each pass tries every rule
// once in theory order and rewrites W immediately when the rule's
// antecedent divides it. Stops when a pass changes nothing, when the
// counter (initially the total antecedent size) runs out, or when y shows
// up in W. Throws ContractingTheory.
MemberResult member(const Theory& theory, const Mfd& query);

}  // namespace mfd
