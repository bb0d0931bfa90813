#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "iolb/pebblelab/partition.hpp"

namespace iolb::pebble {

using Rng = std::mt19937_64;

// Vertices in topological order with at most max_indeg predecessors each.
// Sources are inputs and sinks are outputs.
Cdag random_dag(Rng& rng, int n, int max_indeg);

// A random complete NR calculation using slides when all pebbles are busy.
Calculation random_nr_calculation(const Cdag& c, int S, Rng& rng);

struct SuiteOptions {
  std::uint64_t seed = 1;
  int count = 200;
  int max_vertices = 10;
  bool mutate_checker = false;  // negative control: the checker ignores P2
};

struct SuiteReport {
  int instances = 0;
  std::map<std::string, int> checks;  // property -> times checked
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string str() const;
};

// Partition lower bounds, decomposition, partitions from calculations, tagging,
// variant orderings and a checker self-test on random small DAGs.
SuiteReport run_theorem_suite(const SuiteOptions& opt);

}  // namespace iolb::pebble
