#include "gplan/strips.hpp"

#include <algorithm>
#include <sstream>

namespace gplan {

namespace {

std::string join_args(const std::vector<std::string>& args) {
  std::string out;
  for (const auto& a : args) {
    out += ' ';
    out += a;
  }
  return out;
}

void sort_unique(std::vector<Proposition>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::string Atom::str() const {
  return "(" + predicate + join_args(parameters) + ")";
}

std::string Proposition::str() const {
  return "(" + predicate + join_args(arguments) + ")";
}

size_t PropositionHash::operator()(const Proposition& p) const {
  size_t h = std::hash<std::string>{}(p.predicate);
  for (const auto& a : p.arguments) {
    h = h * 1099511628211ULL ^ std::hash<std::string>{}(a);
  }
  return h;
}

std::string Literal::str() const {
  if (negative) return "(not " + proposition.str() + ")";
  return proposition.str();
}

std::string GroundAction::str() const {
  if (kind == ActionKind::noop) return "(noop " + noop_literal->str() + ")";
  std::string out = "(" + schema_name;
  for (const auto& [var, value] : binding) {
    out += ' ';
    out += value;
  }
  return out + ")";
}

std::string GroundAction::action_line() const {
  std::string out = (kind == ActionKind::noop) ? "NoOp" : schema_name;
  out += " {";
  bool first = true;
  for (const auto& [var, value] : binding) {
    if (!first) out += ", ";
    first = false;
    out += "'" + var + "': '" + value + "'";
  }
  return out + "}";
}

GroundAction make_noop(const Literal& l) {
  GroundAction a;
  a.kind = ActionKind::noop;
  a.schema_name = "NoOp";
  a.noop_literal = l;
  return a;
}

size_t LayeredPlan::action_count() const {
  size_t n = 0;
  for (const auto& layer : layers) n += layer.size();
  return n;
}

std::vector<Proposition> ground_propositions(const PlanningProblem& problem) {
  std::vector<Proposition> out;
  for (const auto& pred : problem.predicates) {
    size_t arity = pred.parameters.size();
    std::vector<size_t> idx(arity, 0);
    while (true) {
      Proposition p;
      p.predicate = pred.predicate;
      for (size_t i = 0; i < arity; ++i) p.arguments.push_back(problem.objects[idx[i]]);
      out.push_back(std::move(p));
      if (arity == 0 || problem.objects.empty()) break;
      size_t k = arity;
      while (k > 0) {
        --k;
        if (++idx[k] < problem.objects.size()) break;
        idx[k] = 0;
        if (k == 0) goto done;
      }
      continue;
    done:
      break;
    }
    if (problem.objects.empty() && pred.parameters.size() > 0) continue;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<GroundAction> ground_all(const PlanningProblem& problem) {
  std::vector<GroundAction> out;
  for (const auto& schema : problem.schemas) {
    // reject unbound variables up front
    auto check_bound = [&](const std::vector<Atom>& atoms) {
      for (const auto& atom : atoms) {
        for (const auto& v : atom.parameters) {
          if (std::find(schema.parameters.begin(), schema.parameters.end(), v) ==
              schema.parameters.end()) {
            throw ModelError("unbound variable " + v + " in action " + schema.name);
          }
        }
      }
    };
    check_bound(schema.pre);
    check_bound(schema.add);
    check_bound(schema.del);

    size_t arity = schema.parameters.size();
    if (arity > 0 && problem.objects.empty()) continue;
    std::vector<size_t> idx(arity, 0);
    while (true) {
      GroundAction a;
      a.kind = ActionKind::domain;
      a.schema_name = schema.name;
      for (size_t i = 0; i < arity; ++i) {
        a.binding.emplace_back(schema.parameters[i], problem.objects[idx[i]]);
      }
      auto instantiate = [&](const std::vector<Atom>& atoms) {
        std::vector<Proposition> props;
        for (const auto& atom : atoms) {
          Proposition p;
          p.predicate = atom.predicate;
          for (const auto& v : atom.parameters) {
            for (const auto& [var, value] : a.binding) {
              if (var == v) {
                p.arguments.push_back(value);
                break;
              }
            }
          }
          props.push_back(std::move(p));
        }
        sort_unique(props);
        return props;
      };
      a.pre = instantiate(schema.pre);
      a.add = instantiate(schema.add);
      a.del = instantiate(schema.del);
      // ground overlap (e.g. a move that starts and ends at the same place)
      // resolves as delete-then-add
      std::vector<Proposition> del;
      std::set_difference(a.del.begin(), a.del.end(), a.add.begin(), a.add.end(),
                          std::back_inserter(del));
      a.del = std::move(del);
      out.push_back(std::move(a));

      if (arity == 0) break;
      size_t k = arity;
      bool carried = true;
      while (k > 0) {
        --k;
        if (++idx[k] < problem.objects.size()) {
          carried = false;
          break;
        }
        idx[k] = 0;
      }
      if (carried) break;
    }
  }
  std::sort(out.begin(), out.end(), [](const GroundAction& x, const GroundAction& y) {
    if (x.schema_name != y.schema_name) return x.schema_name < y.schema_name;
    return x.binding < y.binding;
  });
  return out;
}

bool applicable(const State& state, const GroundAction& action) {
  if (action.kind == ActionKind::noop) {
    bool holds = state.contains(action.noop_literal->proposition);
    return action.noop_literal->negative ? !holds : holds;
  }
  for (const auto& p : action.pre) {
    if (!state.contains(p)) return false;
  }
  return true;
}

State apply(const State& state, const GroundAction& action) {
  if (action.kind == ActionKind::noop) {
    if (!applicable(state, action)) {
      throw InapplicableActionError("maintenance literal does not hold: " +
                                        action.noop_literal->str(),
                                    {});
    }
    return state;
  }
  std::vector<Proposition> missing;
  for (const auto& p : action.pre) {
    if (!state.contains(p)) missing.push_back(p);
  }
  if (!missing.empty()) {
    std::string msg = "action " + action.str() + " inapplicable; missing:";
    for (const auto& p : missing) msg += " " + p.str();
    throw InapplicableActionError(msg, missing);
  }
  State next = state;
  for (const auto& p : action.del) next.props.erase(p);
  for (const auto& p : action.add) next.props.insert(p);
  return next;
}

State apply_layer(const State& state, const std::vector<GroundAction>& layer) {
  for (const auto& a : layer) {
    if (!applicable(state, a)) {
      std::vector<Proposition> missing;
      for (const auto& p : a.pre) {
        if (!state.contains(p)) missing.push_back(p);
      }
      throw InapplicableActionError("action " + a.str() + " inapplicable in layer", missing);
    }
  }
  for (size_t i = 0; i < layer.size(); ++i) {
    for (size_t j = 0; j < layer.size(); ++j) {
      if (i == j) continue;
      const auto& a = layer[i];
      const auto& b = layer[j];
      for (const auto& d : a.del) {
        if (std::binary_search(b.add.begin(), b.add.end(), d)) {
          throw LayerConflictError("actions " + a.str() + " and " + b.str() +
                                       " conflict: " + a.str() + " deletes add effect " +
                                       d.str(),
                                   "inconsistent-effects");
        }
        if (std::binary_search(b.pre.begin(), b.pre.end(), d)) {
          throw LayerConflictError("actions " + a.str() + " and " + b.str() +
                                       " conflict: " + a.str() + " deletes precondition " +
                                       d.str(),
                                   "interference");
        }
      }
    }
  }
  State next = state;
  for (const auto& a : layer) {
    for (const auto& p : a.del) next.props.erase(p);
  }
  for (const auto& a : layer) {
    for (const auto& p : a.add) next.props.insert(p);
  }
  return next;
}

Verdict validate(const PlanningProblem& problem, const LayeredPlan& plan) {
  State state = problem.init;
  for (size_t i = 0; i < plan.layers.size(); ++i) {
    try {
      state = apply_layer(state, plan.layers[i]);
    } catch (const std::runtime_error& e) {
      return {false, static_cast<int>(i), e.what()};
    }
  }
  std::vector<Proposition> unmet;
  for (const auto& g : problem.goal) {
    if (!state.contains(g)) unmet.push_back(g);
  }
  if (!unmet.empty()) {
    std::string reason = "goal not reached; missing:";
    for (const auto& p : unmet) reason += " " + p.str();
    return {false, -1, reason};
  }
  return {true, -1, ""};
}

void check_well_formed(const PlanningProblem& problem) {
  if (problem.goal.empty()) throw ModelError("problem has an empty goal");
  auto find_pred = [&](const std::string& name) -> const Atom* {
    for (const auto& p : problem.predicates) {
      if (p.predicate == name) return &p;
    }
    return nullptr;
  };
  auto check_prop = [&](const Proposition& p, const char* where) {
    const Atom* decl = find_pred(p.predicate);
    if (!decl) throw ModelError(std::string(where) + ": undeclared predicate " + p.predicate);
    if (decl->parameters.size() != p.arguments.size()) {
      throw ModelError(std::string(where) + ": arity mismatch for " + p.str());
    }
    for (const auto& a : p.arguments) {
      if (std::find(problem.objects.begin(), problem.objects.end(), a) ==
          problem.objects.end()) {
        throw ModelError(std::string(where) + ": undeclared object " + a);
      }
    }
  };
  for (const auto& p : problem.init.props) check_prop(p, "init");
  for (const auto& p : problem.goal) check_prop(p, "goal");
  for (const auto& s : problem.schemas) {
    for (const auto& a : s.pre) {
      if (!find_pred(a.predicate)) {
        throw ModelError("action " + s.name + ": undeclared predicate " + a.predicate);
      }
    }
  }
}

}  // namespace gplan
