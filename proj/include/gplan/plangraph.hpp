#pragma once

#include <optional>
#include <random>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gplan/advisor.hpp"
#include "gplan/ground.hpp"
#include "gplan/metrics.hpp"

namespace gplan {

// A node of an action level: either a grounded domain action or the
// maintenance action of one literal.
struct NodeAction {
  int32_t code = 0;  // >= 0: op id; < 0: noop over literal -(code+1)

  static NodeAction from_op(OpId id) { return {id}; }
  static NodeAction from_noop(LitId l) { return {-l - 1}; }
  bool is_noop() const { return code < 0; }
  OpId op() const { return code; }
  LitId noop_lit() const { return -code - 1; }

  auto operator<=>(const NodeAction&) const = default;
};

inline uint64_t pack_pair(int32_t a, int32_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
         static_cast<uint32_t>(b);
}

enum class MutexReason { inconsistent_effects, interference, competing_needs };

const char* mutex_reason_name(MutexReason r);

struct LiteralLevel {
  std::vector<LitId> literals;  // ascending
  std::unordered_set<LitId> present;
  std::unordered_set<uint64_t> mutex;  // packed literal pairs
  std::unordered_map<LitId, std::vector<NodeAction>> support;  // canonical order

  bool has(LitId l) const { return present.count(l) > 0; }
  bool mutex_pair(LitId a, LitId b) const { return mutex.count(pack_pair(a, b)) > 0; }
};

struct ActionLevel {
  std::vector<NodeAction> actions;  // canonical order: noops first, then domain ops
  std::unordered_map<uint64_t, MutexReason> mutex;

  bool mutex_pair(NodeAction a, NodeAction b) const {
    return mutex.count(pack_pair(a.code, b.code)) > 0;
  }
  std::optional<MutexReason> reason(NodeAction a, NodeAction b) const {
    auto it = mutex.find(pack_pair(a.code, b.code));
    if (it == mutex.end()) return std::nullopt;
    return it->second;
  }
};

class PlanningGraph {
 public:
  explicit PlanningGraph(const GroundIndex& index);

  const GroundIndex& index() const { return *index_; }
  int levels() const { return static_cast<int>(action_levels_.size()); }  // expansions done
  const LiteralLevel& literal_level(int i) const { return literal_levels_[static_cast<size_t>(i)]; }
  const ActionLevel& action_level(int i) const {  // i in 1..levels()
    return action_levels_[static_cast<size_t>(i - 1)];
  }

  // One expansion step: candidate generation, advisor pruning gated by kappa,
  // maintenance actions, action mutexes, and the next literal level.
  // Returns true when at least one advisor rejection was actually removed.
  bool expand(Advisor& advisor, double kappa, std::mt19937_64& rng, RunMetrics& metrics,
              bool prune_enabled);

  // Candidates at the next action level: domain ops whose preconditions are
  // present and pairwise non-mutex in the last literal level.
  std::vector<OpId> candidates() const;

  bool goal_satisfied() const;
  bool leveled_off() const;

  std::string node_str(NodeAction a) const;
  std::string dump() const;  // canonical line-oriented text, for golden tests

  // mutex test between two node actions given the previous literal level
  std::optional<MutexReason> action_mutex(NodeAction a, NodeAction b,
                                          const LiteralLevel& prev) const;

 private:
  void add_literal_level(const ActionLevel& acts);

  const GroundIndex* index_;
  std::vector<LiteralLevel> literal_levels_;
  std::vector<ActionLevel> action_levels_;
};

}  // namespace gplan
