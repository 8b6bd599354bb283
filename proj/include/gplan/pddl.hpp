#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gplan/strips.hpp"

namespace gplan {

struct SourceSpan {
  size_t start = 0, end = 0;  // byte offsets, start <= end
  int line = 1, column = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, SourceSpan s)
      : std::runtime_error(msg + " (line " + std::to_string(s.line) + ", column " +
                           std::to_string(s.column) + ")"),
        span(s) {}
  SourceSpan span;
};

struct Domain {
  std::string name;
  std::vector<std::string> requirements;  // ":strips"
  std::vector<Atom> predicates;
  std::vector<ActionSchema> schemas;      // sorted by name

  auto operator<=>(const Domain&) const = default;
};

struct CorruptionReport {
  double proportion = 0.0;
  uint64_t seed = 0;
  struct Removal {
    std::string schema;
    std::string slot;  // "pre" | "add" | "del"
    Atom atom;
    auto operator<=>(const Removal&) const = default;
  };
  std::vector<Removal> removed;
  std::vector<std::string> emptied_preconditions;  // schemas whose pre became empty

  std::string to_json() const;
};

Domain parse_domain(const std::string& text);
PlanningProblem parse_problem(const std::string& text, const Domain& domain);

std::string serialize_domain(const Domain& domain);
std::string serialize_problem(const PlanningProblem& problem);

// Number of condition literals (pre + add + del atoms) across all schemas.
size_t condition_literal_count(const Domain& domain);

// Removes max(1, round(proportion * N)) condition literals, sampled uniformly
// without replacement; proportion 0 removes nothing. Deterministic per seed.
std::pair<Domain, CorruptionReport> corrupt_domain(const Domain& domain, double proportion,
                                                   uint64_t seed);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace gplan
