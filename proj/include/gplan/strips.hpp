#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gplan {

// Schema-level atom: a predicate applied to '?'-prefixed variables.
struct Atom {
  std::string predicate;
  std::vector<std::string> parameters;

  auto operator<=>(const Atom&) const = default;
  std::string str() const;
};

// Ground fact: a predicate applied to object constants.
struct Proposition {
  std::string predicate;
  std::vector<std::string> arguments;

  auto operator<=>(const Proposition&) const = default;
  std::string str() const;  // "(pred a b)"
};

struct PropositionHash {
  size_t operator()(const Proposition& p) const;
};

struct Literal {
  Proposition proposition;
  bool negative = false;

  Literal negated() const { return {proposition, !negative}; }
  auto operator<=>(const Literal&) const = default;
  std::string str() const;  // "(pred a b)" or "(not (pred a b))"
};

struct ActionSchema {
  std::string name;  // normalized upper-case
  std::vector<std::string> parameters;
  std::vector<Atom> pre, add, del;

  int arity() const { return static_cast<int>(parameters.size()); }
};

enum class ActionKind { domain, noop };

struct GroundAction {
  ActionKind kind = ActionKind::domain;
  std::string schema_name;
  std::vector<std::pair<std::string, std::string>> binding;  // var -> constant, schema order
  std::vector<Proposition> pre, add, del;  // sorted, deduplicated; domain kind only
  std::optional<Literal> noop_literal;     // present iff kind == noop

  std::string str() const;          // "(NAME a b)" / "(noop <literal>)"
  std::string action_line() const;  // "NAME {'?x': 'a', '?y': 'b'}"
  auto operator<=>(const GroundAction&) const = default;
};

GroundAction make_noop(const Literal& l);

struct State {
  std::set<Proposition> props;

  bool contains(const Proposition& p) const { return props.count(p) > 0; }
  auto operator<=>(const State&) const = default;
};

struct PlanningProblem {
  std::string domain_name;
  std::string problem_name;
  std::vector<std::string> objects;     // sorted constants
  std::vector<Atom> predicates;         // declared predicate signatures
  std::vector<ActionSchema> schemas;    // sorted by name
  State init;
  std::vector<Proposition> goal;        // sorted, nonempty
};

struct LayeredPlan {
  std::vector<std::vector<GroundAction>> layers;  // domain actions only

  size_t action_count() const;
};

struct Verdict {
  bool valid = false;
  int failing_layer = -1;  // 0-based layer index, or -1 when the goal check fails
  std::string reason;
};

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InapplicableActionError : public std::runtime_error {
 public:
  InapplicableActionError(std::string msg, std::vector<Proposition> missing_props)
      : std::runtime_error(std::move(msg)), missing(std::move(missing_props)) {}
  std::vector<Proposition> missing;
};

class LayerConflictError : public std::runtime_error {
 public:
  LayerConflictError(std::string msg, std::string rule_name)
      : std::runtime_error(std::move(msg)), rule(std::move(rule_name)) {}
  std::string rule;  // "inconsistent-effects" or "interference"
};

// Every binding of each schema over the declared objects, duplicates allowed.
// Result is sorted by (name, arguments). Excludes maintenance actions.
std::vector<GroundAction> ground_all(const PlanningProblem& problem);

// All ground propositions over the declared predicates and objects, sorted.
std::vector<Proposition> ground_propositions(const PlanningProblem& problem);

bool applicable(const State& state, const GroundAction& action);

// (state \ del) ∪ add; throws InapplicableActionError listing missing preconditions.
State apply(const State& state, const GroundAction& action);

// Parallel step: all actions applied at once. Throws LayerConflictError when one
// action deletes a precondition or add effect of another.
State apply_layer(const State& state, const std::vector<GroundAction>& layer);

Verdict validate(const PlanningProblem& problem, const LayeredPlan& plan);

// Structural checks on a parsed problem (declared predicates, arity, goal nonempty...).
void check_well_formed(const PlanningProblem& problem);

}  // namespace gplan
