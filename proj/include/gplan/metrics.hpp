#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gplan {

// Per-solve counters. Wall time is informational and excluded from
// determinism comparisons.
struct RunMetrics {
  int64_t expansion_actions = 0;  // noops included
  int64_t mutex_pairs = 0;        // action-level mutex pairs
  int64_t dfs_nodes = 0;
  int64_t advisor_calls = 0;
  int64_t skipped_response_lines = 0;
  int64_t advisor_failures = 0;
  int64_t pruned_actions = 0;  // candidates actually removed by the kappa gate
  double wall_ms = 0.0;

  // stable serialization, wall time excluded
  std::string deterministic_str() const;
};

struct AttemptRecord {
  int index = 0;
  double kappa = 0.0;
  int levels_built = 0;
  int64_t dfs_nodes = 0;
  std::vector<int64_t> expansion_per_layer;
  std::string incident;  // advisor/transport failure note, if any
};

}  // namespace gplan
