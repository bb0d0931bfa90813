#pragma once

#include <string>
#include <vector>

#include "iolb/pebblelab/game.hpp"

namespace iolb::pebble {

// hk: S-partition of all of V with dominator and minimum sets.
// nr: partition of V \ I with In and Out sets.
enum class PartitionDef { hk, nr };
PartitionDef parse_partition_def(const std::string& s);

struct Partition {
  std::vector<std::vector<int>> parts;
  int h() const { return static_cast<int>(parts.size()); }
  std::string str(const Cdag& c) const;
};

struct PartitionCheck {
  bool ok = true;
  std::vector<std::string> violations;
};

// Consecutive blocks of S I/O moves of an NR calculation; each block gives
// the vertices it fires. Blocks firing nothing are dropped.
Partition partition_from_calculation(const Cdag& c, int S, const Calculation& calc);

// bound is the size limit (2S for the lower-bound lemmas). skip_acyclicity
// disables P2 and exists only as a negative control for the check suite.
PartitionCheck verify_partition(const Cdag& c, const Partition& p, int bound, PartitionDef def,
                                bool skip_acyclicity = false);

// Fewest vertices cutting every path from I into the set (vertex min cut).
int min_dominator(const Cdag& c, Mask set);
std::vector<int> in_set(const Cdag& c, Mask set);
std::vector<int> out_set(const Cdag& c, Mask set);
std::vector<int> min_set(const Cdag& c, Mask set);

struct HminResult {
  int h = 0;
  Partition witness;
};

// Exact minimum h. Parts are peeled off in dependence order, so the search
// runs over downward closed vertex sets.
HminResult hmin(const Cdag& c, int bound, PartitionDef def, int max_downsets = 6000);

}  // namespace iolb::pebble
