#include "gplan/advisor.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "gplan/pddl.hpp"
#include "json.hpp"

namespace gplan {

namespace {

std::vector<OpId> sanitize(const std::vector<OpId>& chosen, const std::vector<OpId>& candidates) {
  std::unordered_set<OpId> allowed(candidates.begin(), candidates.end());
  std::unordered_set<OpId> seen;
  std::vector<OpId> out;
  for (OpId id : chosen) {
    if (allowed.count(id) && seen.insert(id).second) out.push_back(id);
  }
  return out;
}

}  // namespace

PruneDecision Advisor::prune(const AdviceContext& ctx) {
  PruneDecision d = prune_impl(ctx);
  d.keep = sanitize(d.keep, ctx.candidates);
  if (d.keep.empty() && !ctx.candidates.empty() && coerce_empty_) {
    d.keep = ctx.candidates;
    d.coerced = true;
  }
  return d;
}

OrderDecision Advisor::order(const AdviceContext& ctx) {
  OrderDecision d = order_impl(ctx);
  d.ranked = sanitize(d.ranked, ctx.candidates);
  return d;
}

PruneDecision PassthroughAdvisor::prune_impl(const AdviceContext& ctx) {
  return {ctx.candidates, false, 0, ""};
}

OrderDecision PassthroughAdvisor::order_impl(const AdviceContext&) {
  return {};  // no preference: canonical order
}

void HeuristicAdvisor::ensure_analysis(const GroundIndex& index) {
  if (analyzed_ == &index) return;
  analyzed_ = &index;
  relevant_.assign(index.ops().size(), 0);
  std::vector<char> rel_props(index.propositions().size(), 0);
  for (PropId g : index.goal_props()) rel_props[static_cast<size_t>(g)] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const GroundOp& op : index.ops()) {
      if (relevant_[static_cast<size_t>(op.id)]) continue;
      bool feeds = false;
      for (PropId p : op.add) {
        if (rel_props[static_cast<size_t>(p)]) {
          feeds = true;
          break;
        }
      }
      if (!feeds) continue;
      relevant_[static_cast<size_t>(op.id)] = 1;
      changed = true;
      for (PropId p : op.pre) {
        if (!rel_props[static_cast<size_t>(p)]) rel_props[static_cast<size_t>(p)] = 1;
      }
    }
  }
}

PruneDecision HeuristicAdvisor::prune_impl(const AdviceContext& ctx) {
  ensure_analysis(*ctx.index);
  PruneDecision d;
  for (OpId id : ctx.candidates) {
    const GroundOp& op = ctx.index->op(id);
    if (op.identity) continue;  // applying it changes nothing
    if (!relevant_[static_cast<size_t>(id)]) continue;
    d.keep.push_back(id);
  }
  return d;
}

OrderDecision HeuristicAdvisor::order_impl(const AdviceContext& ctx) {
  ensure_analysis(*ctx.index);
  std::unordered_set<PropId> subgoals(ctx.subgoals.begin(), ctx.subgoals.end());
  std::vector<std::pair<int, OpId>> scored;
  scored.reserve(ctx.candidates.size());
  for (OpId id : ctx.candidates) {
    const GroundOp& op = ctx.index->op(id);
    int score = 0;
    for (PropId p : op.add) score += subgoals.count(p) ? 1 : 0;
    scored.emplace_back(-score, id);  // descending score, ties canonical
  }
  std::sort(scored.begin(), scored.end());
  OrderDecision d;
  for (const auto& [neg_score, id] : scored) d.ranked.push_back(id);
  return d;
}

ReplayFixture load_fixture(const std::string& path) {
  nlohmann::json j = nlohmann::json::parse(read_file(path));
  ReplayFixture f;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::vector<std::string> lines;
    for (const auto& l : it.value()) lines.push_back(l.get<std::string>());
    f.emplace(it.key(), std::move(lines));
  }
  return f;
}

void save_fixture(const ReplayFixture& fixture, const std::string& path) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, lines] : fixture) j[key] = lines;
  write_file(path, j.dump(1));
}

const std::vector<std::string>& ReplayAdvisor::lines_for(Phase phase, int level) const {
  std::string key =
      (phase == Phase::prune ? "prune:" : "sort:") + std::to_string(level);
  auto it = fixture_.find(key);
  if (it == fixture_.end()) throw FixtureError("replay fixture has no entry for " + key);
  return it->second;
}

PruneDecision ReplayAdvisor::prune_impl(const AdviceContext& ctx) {
  std::string joined;
  for (const auto& l : lines_for(Phase::prune, ctx.level)) joined += l + "\n";
  ParsedActionLines parsed = parse_action_lines(joined, *ctx.index, ctx.candidates);
  return {parsed.ops, false, parsed.skipped, joined};
}

OrderDecision ReplayAdvisor::order_impl(const AdviceContext& ctx) {
  std::string joined;
  for (const auto& l : lines_for(Phase::sort, ctx.level)) joined += l + "\n";
  ParsedActionLines parsed = parse_action_lines(joined, *ctx.index, ctx.candidates);
  return {parsed.ops, parsed.skipped, joined};
}

std::string build_prompt(const AdviceContext& ctx) {
  const PlanningProblem& problem = ctx.index->problem();
  Domain d;
  d.name = problem.domain_name;
  d.requirements = {":strips"};
  d.predicates = problem.predicates;
  d.schemas = problem.schemas;

  std::ostringstream os;
  os << "Domain:\n" << serialize_domain(d);
  os << "Initial state:\n";
  for (const auto& p : problem.init.props) os << p.str() << "\n";
  os << "Goal:\n";
  for (const auto& g : problem.goal) os << g.str() << "\n";
  os << "Proposition set:\n";
  if (ctx.literals) {
    for (LitId l : *ctx.literals) os << ctx.index->lit_str(l) << "\n";
  }
  if (!ctx.constraints_text.empty()) {
    os << "Mutual exclusion constraints:\n" << ctx.constraints_text;
  }
  os << "Candidate actions:\n";
  for (OpId id : ctx.candidates) os << ctx.index->op_line(id) << "\n";
  if (ctx.phase == Phase::prune) {
    os << "Select the candidate actions that help reach the goal and drop the "
          "rest. Answer with one action per line.\n";
  } else {
    os << "Sort all candidate actions from most to least promising for "
          "reaching the goal. Answer with one action per line.\n";
  }
  os << "e.g., move {'?from': 'rooma', '?to': 'roomb'}\n";
  return os.str();
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// parses `'?key': 'value'` pairs from the inside of the brace block
bool parse_param_map(const std::string& body,
                     std::vector<std::pair<std::string, std::string>>& out) {
  std::string s = trim(body);
  if (s.empty()) return true;
  size_t pos = 0;
  while (pos < s.size()) {
    auto read_quoted = [&](std::string& dst) -> bool {
      while (pos < s.size() && (s[pos] == ' ' || s[pos] == ',')) ++pos;
      if (pos >= s.size() || s[pos] != '\'') return false;
      size_t close = s.find('\'', pos + 1);
      if (close == std::string::npos) return false;
      dst = s.substr(pos + 1, close - pos - 1);
      pos = close + 1;
      return true;
    };
    std::string key, value;
    if (!read_quoted(key)) return false;
    while (pos < s.size() && s[pos] == ' ') ++pos;
    if (pos >= s.size() || s[pos] != ':') return false;
    ++pos;
    if (!read_quoted(value)) return false;
    if (key.empty() || key[0] != '?') return false;
    out.emplace_back(key, value);
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == ',')) ++pos;
  }
  return true;
}

}  // namespace

ParsedActionLines parse_action_lines(const std::string& text, const GroundIndex& index,
                                     const std::vector<OpId>& candidates) {
  std::unordered_set<OpId> allowed(candidates.begin(), candidates.end());
  std::unordered_set<OpId> seen;
  ParsedActionLines result;

  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    std::string line = trim(raw);
    if (line.empty()) continue;
    size_t brace = line.find('{');
    if (brace == std::string::npos || brace == 0) {
      ++result.skipped;
      continue;
    }
    std::string name = trim(line.substr(0, brace));
    size_t close = line.find('}', brace);
    if (name.empty() || name.find(' ') != std::string::npos || close == std::string::npos) {
      ++result.skipped;
      continue;
    }
    std::vector<std::pair<std::string, std::string>> params;
    if (!parse_param_map(line.substr(brace + 1, close - brace - 1), params)) {
      ++result.skipped;
      continue;
    }
    // bind by parameter name in the schema's declared order
    std::string upper_name;
    for (char c : name)
      upper_name += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    const ActionSchema* schema = nullptr;
    for (const auto& s : index.problem().schemas) {
      if (s.name == upper_name) {
        schema = &s;
        break;
      }
    }
    if (!schema || schema->parameters.size() != params.size()) {
      ++result.skipped;
      continue;
    }
    std::vector<std::string> args;
    bool ok = true;
    for (const auto& var : schema->parameters) {
      bool found = false;
      for (const auto& [k, v] : params) {
        if (k == var) {
          args.push_back(v);
          found = true;
          break;
        }
      }
      if (!found) {
        ok = false;
        break;
      }
    }
    OpId id = ok ? index.find_op(upper_name, args) : -1;
    if (id < 0 || !allowed.count(id)) {
      ++result.skipped;
      continue;
    }
    if (seen.insert(id).second) result.ops.push_back(id);
  }
  return result;
}

}  // namespace gplan
