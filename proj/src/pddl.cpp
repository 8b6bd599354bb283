#include "gplan/pddl.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace gplan {

namespace {

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

struct Token {
  enum Kind { LParen, RParen, Symbol, End } kind;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_ws();
    SourceSpan span{pos_, pos_, line_, col_};
    if (pos_ >= text_.size()) return {Token::End, "", span};
    char c = text_[pos_];
    if (c == '(') {
      advance();
      span.end = pos_;
      return {Token::LParen, "(", span};
    }
    if (c == ')') {
      advance();
      span.end = pos_;
      return {Token::RParen, ")", span};
    }
    std::string sym;
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d))) break;
      sym += d;
      advance();
    }
    span.end = pos_;
    return {Token::Symbol, sym, span};
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

// S-expression tree
struct Node {
  bool is_list = false;
  std::string symbol;
  std::vector<Node> children;
  SourceSpan span;
};

class Reader {
 public:
  explicit Reader(const std::string& text) : lexer_(text) { tok_ = lexer_.next(); }

  Node read() {
    Node n = read_node();
    return n;
  }

 private:
  Node read_node() {
    if (tok_.kind == Token::End) throw ParseError("unexpected end of input", tok_.span);
    if (tok_.kind == Token::RParen) throw ParseError("unexpected ')'", tok_.span);
    if (tok_.kind == Token::LParen) {
      Node n;
      n.is_list = true;
      n.span = tok_.span;
      tok_ = lexer_.next();
      while (tok_.kind != Token::RParen) {
        if (tok_.kind == Token::End) throw ParseError("missing ')'", tok_.span);
        n.children.push_back(read_node());
      }
      n.span.end = tok_.span.end;
      tok_ = lexer_.next();
      return n;
    }
    Node n;
    n.symbol = tok_.text;
    n.span = tok_.span;
    tok_ = lexer_.next();
    return n;
  }

  Lexer lexer_;
  Token tok_;
};

const Node& child(const Node& n, size_t i) {
  if (!n.is_list || n.children.size() <= i) {
    throw ParseError("malformed expression", n.span);
  }
  return n.children[i];
}

bool head_is(const Node& n, const std::string& kw) {
  return n.is_list && !n.children.empty() && !n.children[0].is_list &&
         lower(n.children[0].symbol) == kw;
}

Atom parse_atom(const Node& n, bool allow_vars) {
  if (!n.is_list || n.children.empty() || n.children[0].is_list) {
    throw ParseError("expected atom", n.span);
  }
  Atom a;
  a.predicate = lower(n.children[0].symbol);
  for (size_t i = 1; i < n.children.size(); ++i) {
    const Node& c = n.children[i];
    if (c.is_list) throw ParseError("expected parameter name", c.span);
    std::string name = lower(c.symbol);
    if (name.empty()) throw ParseError("empty parameter", c.span);
    if (name[0] == '?' && !allow_vars) {
      throw ParseError("variable not allowed here: " + name, c.span);
    }
    a.parameters.push_back(name);
  }
  return a;
}

std::vector<Node> conjunction(const Node& n) {
  if (head_is(n, "and")) {
    return std::vector<Node>(n.children.begin() + 1, n.children.end());
  }
  return {n};
}

}  // namespace

Domain parse_domain(const std::string& text) {
  Reader reader(text);
  Node root = reader.read();
  if (!head_is(root, "define")) throw ParseError("expected (define ...)", root.span);
  const Node& dom = child(root, 1);
  if (!head_is(dom, "domain")) throw ParseError("expected (domain NAME)", dom.span);

  Domain d;
  d.name = lower(child(dom, 1).symbol);

  for (size_t i = 2; i < root.children.size(); ++i) {
    const Node& sec = root.children[i];
    if (head_is(sec, ":requirements")) {
      for (size_t j = 1; j < sec.children.size(); ++j) {
        std::string req = lower(sec.children[j].symbol);
        if (req != ":strips") {
          throw ParseError("unsupported requirement " + req, sec.children[j].span);
        }
        d.requirements.push_back(req);
      }
    } else if (head_is(sec, ":predicates")) {
      for (size_t j = 1; j < sec.children.size(); ++j) {
        Atom a = parse_atom(sec.children[j], true);
        for (const auto& p : a.parameters) {
          if (p.empty() || p[0] != '?') {
            throw ParseError("predicate parameter must start with '?': " + p,
                             sec.children[j].span);
          }
        }
        d.predicates.push_back(std::move(a));
      }
    } else if (head_is(sec, ":action")) {
      ActionSchema schema;
      schema.name = upper(child(sec, 1).symbol);
      size_t j = 2;
      while (j < sec.children.size()) {
        std::string kw = lower(sec.children[j].symbol);
        if (kw == ":parameters") {
          const Node& params = child(sec, j + 1);
          if (!params.is_list) throw ParseError("expected parameter list", params.span);
          for (const auto& p : params.children) {
            std::string name = lower(p.symbol);
            if (name.empty() || name[0] != '?') {
              throw ParseError("parameter must start with '?'", p.span);
            }
            if (std::find(schema.parameters.begin(), schema.parameters.end(), name) !=
                schema.parameters.end()) {
              throw ParseError("duplicate parameter " + name, p.span);
            }
            schema.parameters.push_back(name);
          }
          j += 2;
        } else if (kw == ":precondition") {
          const Node& body = child(sec, j + 1);
          for (const Node& c : conjunction(body)) {
            if (head_is(c, "not")) {
              throw ParseError("negative precondition in action " + schema.name, c.span);
            }
            schema.pre.push_back(parse_atom(c, true));
          }
          j += 2;
        } else if (kw == ":effect") {
          const Node& body = child(sec, j + 1);
          for (const Node& c : conjunction(body)) {
            if (head_is(c, "not")) {
              schema.del.push_back(parse_atom(child(c, 1), true));
            } else {
              schema.add.push_back(parse_atom(c, true));
            }
          }
          j += 2;
        } else {
          throw ParseError("unexpected keyword " + kw + " in action", sec.children[j].span);
        }
      }
      // every body variable must be declared
      auto check = [&](const std::vector<Atom>& atoms) {
        for (const auto& a : atoms) {
          for (const auto& v : a.parameters) {
            if (v[0] == '?' &&
                std::find(schema.parameters.begin(), schema.parameters.end(), v) ==
                    schema.parameters.end()) {
              throw ParseError("unbound variable " + v + " in action " + schema.name, sec.span);
            }
            if (v[0] != '?') {
              throw ParseError("constants in action bodies are not supported: " + v, sec.span);
            }
          }
        }
      };
      check(schema.pre);
      check(schema.add);
      check(schema.del);
      for (const auto& a : schema.add) {
        if (std::find(schema.del.begin(), schema.del.end(), a) != schema.del.end()) {
          throw ParseError("overlapping add/delete effect " + a.str() + " in action " +
                               schema.name,
                           sec.span);
        }
      }
      d.schemas.push_back(std::move(schema));
    } else {
      throw ParseError("unexpected section", sec.span);
    }
  }
  std::sort(d.schemas.begin(), d.schemas.end(),
            [](const ActionSchema& a, const ActionSchema& b) { return a.name < b.name; });
  std::sort(d.predicates.begin(), d.predicates.end());
  return d;
}

PlanningProblem parse_problem(const std::string& text, const Domain& domain) {
  Reader reader(text);
  Node root = reader.read();
  if (!head_is(root, "define")) throw ParseError("expected (define ...)", root.span);
  const Node& prob = child(root, 1);
  if (!head_is(prob, "problem")) throw ParseError("expected (problem NAME)", prob.span);

  PlanningProblem p;
  p.problem_name = lower(child(prob, 1).symbol);
  p.domain_name = domain.name;
  p.predicates = domain.predicates;
  p.schemas = domain.schemas;

  for (size_t i = 2; i < root.children.size(); ++i) {
    const Node& sec = root.children[i];
    if (head_is(sec, ":domain")) {
      std::string name = lower(child(sec, 1).symbol);
      if (name != domain.name) {
        throw ParseError("problem references domain " + name + " but " + domain.name +
                             " was loaded",
                         sec.span);
      }
    } else if (head_is(sec, ":objects")) {
      for (size_t j = 1; j < sec.children.size(); ++j) {
        p.objects.push_back(lower(sec.children[j].symbol));
      }
    } else if (head_is(sec, ":init")) {
      for (size_t j = 1; j < sec.children.size(); ++j) {
        if (head_is(sec.children[j], "not")) {
          throw ParseError("negative literal in :init", sec.children[j].span);
        }
        Atom a = parse_atom(sec.children[j], false);
        p.init.props.insert(Proposition{a.predicate, a.parameters});
      }
    } else if (head_is(sec, ":goal")) {
      const Node& body = child(sec, 1);
      for (const Node& c : conjunction(body)) {
        if (head_is(c, "not")) throw ParseError("negative goal literal", c.span);
        Atom a = parse_atom(c, false);
        p.goal.push_back(Proposition{a.predicate, a.parameters});
      }
    } else {
      throw ParseError("unexpected section", sec.span);
    }
  }
  std::sort(p.objects.begin(), p.objects.end());
  p.objects.erase(std::unique(p.objects.begin(), p.objects.end()), p.objects.end());
  std::sort(p.goal.begin(), p.goal.end());
  p.goal.erase(std::unique(p.goal.begin(), p.goal.end()), p.goal.end());
  check_well_formed(p);
  return p;
}

namespace {

void emit_atom(std::ostringstream& os, const Atom& a) {
  os << '(' << a.predicate;
  for (const auto& v : a.parameters) os << ' ' << v;
  os << ')';
}

}  // namespace

std::string serialize_domain(const Domain& domain) {
  std::ostringstream os;
  os << "(define (domain " << domain.name << ")\n";
  os << "  (:requirements :strips)\n";
  os << "  (:predicates";
  for (const auto& pred : domain.predicates) {
    os << "\n    ";
    emit_atom(os, pred);
  }
  os << ")\n";
  for (const auto& s : domain.schemas) {
    os << "  (:action " << s.name << "\n";
    os << "    :parameters (";
    for (size_t i = 0; i < s.parameters.size(); ++i) {
      if (i) os << ' ';
      os << s.parameters[i];
    }
    os << ")\n";
    os << "    :precondition (and";
    for (const auto& a : s.pre) {
      os << ' ';
      emit_atom(os, a);
    }
    os << ")\n";
    os << "    :effect (and";
    for (const auto& a : s.add) {
      os << ' ';
      emit_atom(os, a);
    }
    for (const auto& a : s.del) {
      os << " (not ";
      emit_atom(os, a);
      os << ')';
    }
    os << "))\n";
  }
  os << ")\n";
  return os.str();
}

std::string serialize_problem(const PlanningProblem& problem) {
  std::ostringstream os;
  os << "(define (problem " << problem.problem_name << ")\n";
  os << "  (:domain " << problem.domain_name << ")\n";
  os << "  (:objects";
  for (const auto& o : problem.objects) os << ' ' << o;
  os << ")\n";
  os << "  (:init";
  for (const auto& p : problem.init.props) os << "\n    " << p.str();
  os << ")\n";
  os << "  (:goal (and";
  for (const auto& g : problem.goal) os << ' ' << g.str();
  os << ")))\n";
  return os.str();
}

size_t condition_literal_count(const Domain& domain) {
  size_t n = 0;
  for (const auto& s : domain.schemas) n += s.pre.size() + s.add.size() + s.del.size();
  return n;
}

std::pair<Domain, CorruptionReport> corrupt_domain(const Domain& domain, double proportion,
                                                   uint64_t seed) {
  if (proportion < 0.0 || proportion > 1.0) {
    throw ModelError("corruption proportion must lie in [0,1]");
  }
  CorruptionReport report;
  report.proportion = proportion;
  report.seed = seed;

  const size_t total = condition_literal_count(domain);
  size_t k = 0;
  if (proportion > 0.0 && total > 0) {
    k = std::max<long long>(1, std::llround(proportion * static_cast<double>(total)));
    k = std::min(k, total);
  }
  if (k == 0) return {domain, report};

  // global slot list over (schema, slot, position); schemas are kept sorted
  struct Slot {
    size_t schema;
    int field;  // 0 pre, 1 add, 2 del
    size_t pos;
  };
  std::vector<Slot> slots;
  for (size_t si = 0; si < domain.schemas.size(); ++si) {
    const auto& s = domain.schemas[si];
    for (size_t i = 0; i < s.pre.size(); ++i) slots.push_back({si, 0, i});
    for (size_t i = 0; i < s.add.size(); ++i) slots.push_back({si, 1, i});
    for (size_t i = 0; i < s.del.size(); ++i) slots.push_back({si, 2, i});
  }

  std::mt19937_64 rng(seed);
  std::vector<size_t> order(slots.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (size_t i = 0; i < k; ++i) {  // partial Fisher-Yates
    size_t j = i + static_cast<size_t>(rng() % (order.size() - i));
    std::swap(order[i], order[j]);
  }
  std::vector<size_t> chosen(order.begin(), order.begin() + static_cast<long>(k));
  std::sort(chosen.begin(), chosen.end());

  Domain out = domain;
  static const char* slot_names[3] = {"pre", "add", "del"};
  // delete from the back so positions stay valid
  for (auto it = chosen.rbegin(); it != chosen.rend(); ++it) {
    const Slot& sl = slots[*it];
    ActionSchema& s = out.schemas[sl.schema];
    std::vector<Atom>* field = sl.field == 0 ? &s.pre : sl.field == 1 ? &s.add : &s.del;
    report.removed.push_back({s.name, slot_names[sl.field], (*field)[sl.pos]});
    field->erase(field->begin() + static_cast<long>(sl.pos));
  }
  std::reverse(report.removed.begin(), report.removed.end());
  for (const auto& s : out.schemas) {
    if (s.pre.empty() && !domain.schemas.empty()) {
      for (const auto& orig : domain.schemas) {
        if (orig.name == s.name && !orig.pre.empty()) {
          report.emptied_preconditions.push_back(s.name);
        }
      }
    }
  }
  return {out, report};
}

std::string CorruptionReport::to_json() const {
  nlohmann::json j;
  j["proportion"] = proportion;
  j["seed"] = seed;
  j["removed"] = nlohmann::json::array();
  for (const auto& r : removed) {
    j["removed"].push_back({{"action", r.schema}, {"slot", r.slot}, {"atom", r.atom.str()}});
  }
  j["emptied_preconditions"] = emptied_preconditions;
  return j.dump(2);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelError("cannot write file: " + path);
  out << content;
}

}  // namespace gplan
