#include "gplan/plangraph.hpp"

#include <algorithm>
#include <sstream>

namespace gplan {

namespace {

bool intersects(const std::vector<LitId>& a, const std::vector<LitId>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j)
      ++i;
    else if (*j < *i)
      ++j;
    else
      return true;
  }
  return false;
}

struct NodeView {
  const LitId* pre = nullptr;
  size_t pre_n = 0;
  const LitId* makes_true = nullptr;
  size_t true_n = 0;
  const LitId* makes_false = nullptr;
  size_t false_n = 0;
  LitId own = -1;  // noop literal storage
};

bool span_intersects(const LitId* a, size_t an, const LitId* b, size_t bn) {
  size_t i = 0, j = 0;
  while (i < an && j < bn) {
    if (a[i] < b[j])
      ++i;
    else if (b[j] < a[i])
      ++j;
    else
      return true;
  }
  return false;
}

bool node_canonical_less(const NodeAction& a, const NodeAction& b) {
  bool an = a.is_noop(), bn = b.is_noop();
  if (an != bn) return an;  // maintenance actions first
  if (an) return a.noop_lit() < b.noop_lit();
  return a.op() < b.op();
}

}  // namespace

const char* mutex_reason_name(MutexReason r) {
  switch (r) {
    case MutexReason::inconsistent_effects:
      return "inconsistent-effects";
    case MutexReason::interference:
      return "interference";
    case MutexReason::competing_needs:
      return "competing-needs";
  }
  return "?";
}

PlanningGraph::PlanningGraph(const GroundIndex& index) : index_(&index) {
  LiteralLevel level0;
  std::vector<char> in_init(index.propositions().size(), 0);
  for (PropId p : index.init_props()) in_init[static_cast<size_t>(p)] = 1;
  for (PropId p = 0; p < static_cast<PropId>(index.propositions().size()); ++p) {
    level0.literals.push_back(in_init[static_cast<size_t>(p)] ? positive_lit(p)
                                                              : negative_lit(p));
  }
  std::sort(level0.literals.begin(), level0.literals.end());
  level0.present.insert(level0.literals.begin(), level0.literals.end());
  literal_levels_.push_back(std::move(level0));
}

std::vector<OpId> PlanningGraph::candidates() const {
  const LiteralLevel& prev = literal_levels_.back();
  std::vector<OpId> out;
  for (const GroundOp& op : index_->ops()) {
    bool ok = true;
    for (LitId l : op.pre_lits) {
      if (!prev.has(l)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (size_t i = 0; ok && i < op.pre_lits.size(); ++i) {
      for (size_t j = i + 1; j < op.pre_lits.size(); ++j) {
        if (prev.mutex_pair(op.pre_lits[i], op.pre_lits[j])) {
          ok = false;
          break;
        }
      }
    }
    if (ok) out.push_back(op.id);
  }
  return out;
}

std::optional<MutexReason> PlanningGraph::action_mutex(NodeAction a, NodeAction b,
                                                       const LiteralLevel& prev) const {
  auto view = [&](const NodeAction& n, NodeView& v) {
    if (n.is_noop()) {
      v.own = n.noop_lit();
      v.pre = &v.own;
      v.pre_n = 1;
      v.makes_true = &v.own;
      v.true_n = 1;
      v.makes_false = nullptr;
      v.false_n = 0;
    } else {
      const GroundOp& op = index_->op(n.op());
      v.pre = op.pre_lits.data();
      v.pre_n = op.pre_lits.size();
      v.makes_true = op.makes_true.data();
      v.true_n = op.makes_true.size();
      v.makes_false = op.makes_false.data();
      v.false_n = op.makes_false.size();
    }
  };
  NodeView va, vb;
  view(a, va);
  view(b, vb);

  if (span_intersects(va.makes_true, va.true_n, vb.makes_false, vb.false_n) ||
      span_intersects(vb.makes_true, vb.true_n, va.makes_false, va.false_n)) {
    return MutexReason::inconsistent_effects;
  }
  if (span_intersects(va.makes_false, va.false_n, vb.pre, vb.pre_n) ||
      span_intersects(vb.makes_false, vb.false_n, va.pre, va.pre_n)) {
    return MutexReason::interference;
  }
  for (size_t i = 0; i < va.pre_n; ++i) {
    for (size_t j = 0; j < vb.pre_n; ++j) {
      if (va.pre[i] != vb.pre[j] && prev.mutex_pair(va.pre[i], vb.pre[j])) {
        return MutexReason::competing_needs;
      }
    }
  }
  return std::nullopt;
}

bool PlanningGraph::expand(Advisor& advisor, double kappa, std::mt19937_64& rng,
                           RunMetrics& metrics, bool prune_enabled) {
  const LiteralLevel& prev = literal_levels_.back();
  std::vector<OpId> cands = candidates();

  bool any_pruned = false;
  std::vector<OpId> kept = cands;
  if (prune_enabled && !cands.empty()) {
    AdviceContext ctx;
    ctx.phase = Phase::prune;
    ctx.level = levels() + 1;
    ctx.index = index_;
    ctx.candidates = cands;
    ctx.literals = &prev.literals;
    metrics.advisor_calls += 1;
    PruneDecision decision = advisor.prune(ctx);
    metrics.skipped_response_lines += decision.skipped_lines;
    std::unordered_set<OpId> keep_set(decision.keep.begin(), decision.keep.end());
    kept.clear();
    for (OpId id : cands) {
      if (keep_set.count(id)) {
        kept.push_back(id);
        continue;
      }
      // rejected: removed with probability kappa, independently per action
      double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < kappa) {
        any_pruned = true;
        metrics.pruned_actions += 1;
      } else {
        kept.push_back(id);
      }
    }
  }

  ActionLevel level;
  for (LitId l : prev.literals) level.actions.push_back(NodeAction::from_noop(l));
  for (OpId id : kept) level.actions.push_back(NodeAction::from_op(id));
  std::sort(level.actions.begin(), level.actions.end(), node_canonical_less);

  for (size_t i = 0; i < level.actions.size(); ++i) {
    for (size_t j = i + 1; j < level.actions.size(); ++j) {
      auto reason = action_mutex(level.actions[i], level.actions[j], prev);
      if (reason) {
        level.mutex.emplace(pack_pair(level.actions[i].code, level.actions[j].code), *reason);
      }
    }
  }

  metrics.expansion_actions += static_cast<int64_t>(level.actions.size());
  metrics.mutex_pairs += static_cast<int64_t>(level.mutex.size());

  add_literal_level(level);
  action_levels_.push_back(std::move(level));
  return any_pruned;
}

void PlanningGraph::add_literal_level(const ActionLevel& acts) {
  LiteralLevel next;
  for (const NodeAction& n : acts.actions) {
    if (n.is_noop()) {
      next.support[n.noop_lit()].push_back(n);
    } else {
      for (LitId l : index_->op(n.op()).makes_true) next.support[l].push_back(n);
    }
  }
  next.literals.reserve(next.support.size());
  for (const auto& [lit, sup] : next.support) next.literals.push_back(lit);
  std::sort(next.literals.begin(), next.literals.end());
  next.present.insert(next.literals.begin(), next.literals.end());

  for (size_t i = 0; i < next.literals.size(); ++i) {
    for (size_t j = i + 1; j < next.literals.size(); ++j) {
      LitId l1 = next.literals[i], l2 = next.literals[j];
      bool is_mutex = false;
      if (l1 == lit_negate(l2)) {
        is_mutex = true;
      } else {
        const auto& sup1 = next.support.at(l1);
        const auto& sup2 = next.support.at(l2);
        is_mutex = true;
        for (const NodeAction& a : sup1) {
          for (const NodeAction& b : sup2) {
            if (a == b) {  // one action achieves both
              is_mutex = false;
              break;
            }
            if (!acts.mutex_pair(a, b)) {
              is_mutex = false;
              break;
            }
          }
          if (!is_mutex) break;
        }
      }
      if (is_mutex) next.mutex.insert(pack_pair(l1, l2));
    }
  }
  literal_levels_.push_back(std::move(next));
}

bool PlanningGraph::goal_satisfied() const {
  const LiteralLevel& last = literal_levels_.back();
  const auto& goals = index_->goal_props();
  for (PropId g : goals) {
    if (!last.has(positive_lit(g))) return false;
  }
  for (size_t i = 0; i < goals.size(); ++i) {
    for (size_t j = i + 1; j < goals.size(); ++j) {
      if (last.mutex_pair(positive_lit(goals[i]), positive_lit(goals[j]))) return false;
    }
  }
  return true;
}

bool PlanningGraph::leveled_off() const {
  if (literal_levels_.size() < 2) return false;
  const LiteralLevel& a = literal_levels_[literal_levels_.size() - 2];
  const LiteralLevel& b = literal_levels_.back();
  return a.literals == b.literals && a.mutex == b.mutex;
}

std::string PlanningGraph::node_str(NodeAction a) const {
  if (a.is_noop()) return "(noop " + index_->lit_str(a.noop_lit()) + ")";
  return index_->op_str(a.op());
}

std::string PlanningGraph::dump() const {
  std::ostringstream os;
  for (size_t li = 0; li < literal_levels_.size(); ++li) {
    const LiteralLevel& level = literal_levels_[li];
    os << "literal-level " << li << "\n";
    for (LitId l : level.literals) os << "  " << index_->lit_str(l) << "\n";
    std::vector<std::string> pairs;
    for (uint64_t key : level.mutex) {
      LitId l1 = static_cast<LitId>(key >> 32);
      LitId l2 = static_cast<LitId>(key & 0xffffffffu);
      pairs.push_back("  " + index_->lit_str(l1) + " | " + index_->lit_str(l2));
    }
    std::sort(pairs.begin(), pairs.end());
    os << " mutex (" << pairs.size() << ")\n";
    for (const auto& p : pairs) os << p << "\n";

    if (li + 1 < literal_levels_.size()) {
      const ActionLevel& acts = action_levels_[li];
      os << "action-level " << (li + 1) << "\n";
      for (const NodeAction& a : acts.actions) os << "  " << node_str(a) << "\n";
      std::vector<std::string> apairs;
      for (const auto& [key, reason] : acts.mutex) {
        NodeAction a{static_cast<int32_t>(static_cast<uint32_t>(key >> 32))};
        NodeAction b{static_cast<int32_t>(static_cast<uint32_t>(key & 0xffffffffu))};
        apairs.push_back("  " + node_str(a) + " | " + node_str(b) + " : " +
                         mutex_reason_name(reason));
      }
      std::sort(apairs.begin(), apairs.end());
      os << " mutex (" << apairs.size() << ")\n";
      for (const auto& p : apairs) os << p << "\n";
    }
  }
  return os.str();
}

}  // namespace gplan
