#include "gplan/ground.hpp"

#include <algorithm>
#include <cctype>

namespace gplan {

namespace {

std::string op_key(const std::string& name, const std::vector<std::string>& args) {
  std::string key;
  for (char c : name) key += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (const auto& a : args) {
    key += ' ';
    for (char c : a) key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return key;
}

}  // namespace

GroundIndex::GroundIndex(const PlanningProblem& problem) : problem_(&problem) {
  props_ = ground_propositions(problem);  // sorted by (predicate, args) == display order
  prop_ids_.reserve(props_.size() * 2);
  for (size_t i = 0; i < props_.size(); ++i) {
    prop_ids_.emplace(props_[i], static_cast<PropId>(i));
  }

  actions_ = ground_all(problem);  // sorted by (name, binding)
  ops_.reserve(actions_.size());
  for (size_t i = 0; i < actions_.size(); ++i) {
    const GroundAction& a = actions_[i];
    GroundOp op;
    op.id = static_cast<OpId>(i);
    op.action = &actions_[i];
    auto to_ids = [&](const std::vector<Proposition>& props) {
      std::vector<PropId> ids;
      ids.reserve(props.size());
      for (const auto& p : props) ids.push_back(prop_id(p));
      std::sort(ids.begin(), ids.end());
      return ids;
    };
    op.pre = to_ids(a.pre);
    op.add = to_ids(a.add);
    op.del = to_ids(a.del);
    for (PropId p : op.pre) op.pre_lits.push_back(positive_lit(p));
    for (PropId p : op.add) op.makes_true.push_back(positive_lit(p));
    for (PropId p : op.del) op.makes_true.push_back(negative_lit(p));
    for (PropId p : op.add) op.makes_false.push_back(negative_lit(p));
    for (PropId p : op.del) op.makes_false.push_back(positive_lit(p));
    std::sort(op.makes_true.begin(), op.makes_true.end());
    std::sort(op.makes_false.begin(), op.makes_false.end());
    op.identity = op.del.empty() &&
                  std::includes(op.pre.begin(), op.pre.end(), op.add.begin(), op.add.end());
    std::vector<std::string> args;
    for (const auto& [var, value] : a.binding) args.push_back(value);
    op_by_key_.emplace(op_key(a.schema_name, args), op.id);
    ops_.push_back(std::move(op));
  }

  for (const auto& p : problem.init.props) init_.push_back(prop_id(p));
  std::sort(init_.begin(), init_.end());
  for (const auto& g : problem.goal) goal_.push_back(prop_id(g));
  std::sort(goal_.begin(), goal_.end());
}

PropId GroundIndex::prop_id(const Proposition& p) const {
  auto it = prop_ids_.find(p);
  if (it == prop_ids_.end()) throw ModelError("proposition outside grounding: " + p.str());
  return it->second;
}

std::string GroundIndex::lit_str(LitId l) const {
  const Proposition& p = prop(lit_prop(l));
  return lit_is_negative(l) ? "(not " + p.str() + ")" : p.str();
}

OpId GroundIndex::find_op(const std::string& name, const std::vector<std::string>& args) const {
  auto it = op_by_key_.find(op_key(name, args));
  return it == op_by_key_.end() ? -1 : it->second;
}

}  // namespace gplan
