#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gplan/ground.hpp"

namespace gplan {

class AdvisorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FixtureError : public AdvisorError {
 public:
  using AdvisorError::AdvisorError;
};

enum class Phase { prune, sort };

struct AdviceContext {
  Phase phase = Phase::prune;
  int level = 0;  // action level being built (prune) or ordered (sort)
  const GroundIndex* index = nullptr;
  std::vector<OpId> candidates;            // domain ops only, canonical ascending
  const std::vector<LitId>* literals = nullptr;  // current literal level
  std::vector<PropId> subgoals;            // sort phase: goal set at first consult
  std::string constraints_text;            // optional prompt slot, off by default
};

struct PruneDecision {
  std::vector<OpId> keep;  // subset of candidates, duplicates removed
  bool coerced = false;    // empty keep-set was coerced back to all candidates
  int skipped_lines = 0;
  std::string raw_response;
};

struct OrderDecision {
  // Referenced candidates, highest priority first. Empty means "no
  // preference": callers fall back to canonical order.
  std::vector<OpId> ranked;
  int skipped_lines = 0;
  std::string raw_response;
};

class Advisor {
 public:
  virtual ~Advisor() = default;
  virtual std::string name() const = 0;

  PruneDecision prune(const AdviceContext& ctx);
  OrderDecision order(const AdviceContext& ctx);

  // Safety valve: an empty keep-set is normally coerced to "keep all" so a
  // single bad response cannot make a level dead. Disable to study raw
  // advisor behavior.
  void set_empty_keep_coercion(bool on) { coerce_empty_ = on; }
  bool empty_keep_coercion() const { return coerce_empty_; }

 protected:
  virtual PruneDecision prune_impl(const AdviceContext& ctx) = 0;
  virtual OrderDecision order_impl(const AdviceContext& ctx) = 0;

 private:
  bool coerce_empty_ = true;
};

class PassthroughAdvisor : public Advisor {
 public:
  std::string name() const override { return "passthrough"; }

 protected:
  PruneDecision prune_impl(const AdviceContext& ctx) override;
  OrderDecision order_impl(const AdviceContext& ctx) override;
};

// Deterministic guidance without a remote model: backward relevance closure
// for pruning, goal-overlap scoring for ordering.
class HeuristicAdvisor : public Advisor {
 public:
  std::string name() const override { return "heuristic"; }

 protected:
  PruneDecision prune_impl(const AdviceContext& ctx) override;
  OrderDecision order_impl(const AdviceContext& ctx) override;

 private:
  void ensure_analysis(const GroundIndex& index);
  const GroundIndex* analyzed_ = nullptr;
  std::vector<char> relevant_;
};

// Rejects every candidate; used to exercise the kappa completeness schedule.
class RejectAllAdvisor : public Advisor {
 public:
  RejectAllAdvisor() { set_empty_keep_coercion(false); }
  std::string name() const override { return "reject-all"; }

 protected:
  PruneDecision prune_impl(const AdviceContext&) override { return {}; }
  OrderDecision order_impl(const AdviceContext&) override { return {}; }
};

// phase:level ("prune:3" / "sort:7") -> recorded action lines
using ReplayFixture = std::map<std::string, std::vector<std::string>>;

ReplayFixture load_fixture(const std::string& path);
void save_fixture(const ReplayFixture& fixture, const std::string& path);

class ReplayAdvisor : public Advisor {
 public:
  explicit ReplayAdvisor(ReplayFixture fixture) : fixture_(std::move(fixture)) {}
  std::string name() const override { return "fixture"; }

 protected:
  PruneDecision prune_impl(const AdviceContext& ctx) override;
  OrderDecision order_impl(const AdviceContext& ctx) override;

 private:
  const std::vector<std::string>& lines_for(Phase phase, int level) const;
  ReplayFixture fixture_;
};

// Renders the advisory prompt: domain, initial state, goal, proposition set,
// candidate actions, phase instruction, output format example. Deterministic.
std::string build_prompt(const AdviceContext& ctx);

struct ParsedActionLines {
  std::vector<OpId> ops;  // matched candidates, first occurrence kept
  int skipped = 0;        // lines that failed to parse or matched nothing
};

// Scans text line by line for `NAME {'?k': 'v', ...}`; tolerant of trailing
// content after the parameter map. Case-insensitive action names.
ParsedActionLines parse_action_lines(const std::string& text, const GroundIndex& index,
                                     const std::vector<OpId>& candidates);

}  // namespace gplan
