#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "gplan/strips.hpp"

namespace gplan {

using PropId = int32_t;
using LitId = int32_t;  // prop * 2 + (negative ? 1 : 0)
using OpId = int32_t;

inline LitId positive_lit(PropId p) { return p << 1; }
inline LitId negative_lit(PropId p) { return (p << 1) | 1; }
inline PropId lit_prop(LitId l) { return l >> 1; }
inline bool lit_is_negative(LitId l) { return (l & 1) != 0; }
inline LitId lit_negate(LitId l) { return l ^ 1; }

// One grounded domain action in id space. pre/add/del hold proposition ids;
// the *_lits variants are signed literals used for mutex reasoning:
//   makes_true = +add ∪ -del, makes_false = -add ∪ +del.
struct GroundOp {
  OpId id = -1;
  const GroundAction* action = nullptr;  // owned by GroundIndex::actions
  std::vector<PropId> pre, add, del;     // sorted
  std::vector<LitId> pre_lits, makes_true, makes_false;  // sorted
  bool identity = false;  // no delete effects and add ⊆ pre (a no-op when applied)
};

// Problem grounded into integer ids, with canonical ordering:
// proposition ids ascend with their display strings, op ids ascend with
// (name, arguments).
class GroundIndex {
 public:
  explicit GroundIndex(const PlanningProblem& problem);

  const PlanningProblem& problem() const { return *problem_; }
  const std::vector<Proposition>& propositions() const { return props_; }
  const std::vector<GroundOp>& ops() const { return ops_; }
  const GroundOp& op(OpId id) const { return ops_[static_cast<size_t>(id)]; }

  PropId prop_id(const Proposition& p) const;
  const Proposition& prop(PropId id) const { return props_[static_cast<size_t>(id)]; }

  const std::vector<PropId>& init_props() const { return init_; }
  const std::vector<PropId>& goal_props() const { return goal_; }

  std::string lit_str(LitId l) const;
  std::string op_str(OpId id) const { return op(id).action->str(); }
  std::string op_line(OpId id) const { return op(id).action->action_line(); }

  // Lookup by schema name (case-insensitive) and bound arguments; -1 if unknown.
  OpId find_op(const std::string& name, const std::vector<std::string>& args) const;

  const GroundAction& public_action(OpId id) const { return actions_[static_cast<size_t>(id)]; }

 private:
  const PlanningProblem* problem_;
  std::vector<Proposition> props_;
  std::unordered_map<Proposition, PropId, PropositionHash> prop_ids_;
  std::vector<GroundAction> actions_;
  std::vector<GroundOp> ops_;
  std::unordered_map<std::string, OpId> op_by_key_;
  std::vector<PropId> init_, goal_;
};

}  // namespace gplan
