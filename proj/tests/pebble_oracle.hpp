#pragma once

// Exhaustive references for the pebble-game search code.

#include <functional>
#include <vector>

#include "iolb/pebblelab/partition.hpp"

namespace oracle {

using namespace iolb::pebble;

// Smallest valid partition over all set partitions (restricted growth strings).
inline int hmin_bell(const Cdag& c, int bound, PartitionDef def) {
  std::vector<int> vs;
  for (int v = 0; v < c.size(); ++v)
    if (def == PartitionDef::hk || !c.is_input(v)) vs.push_back(v);
  const int n = static_cast<int>(vs.size());
  if (n == 0) return 0;
  int best = n + 1;
  std::vector<int> label(n, 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (used >= best) return;
    if (i == n) {
      Partition p;
      p.parts.resize(used);
      for (int k = 0; k < n; ++k) p.parts[label[k]].push_back(vs[k]);
      if (verify_partition(c, p, bound, def).ok) best = used;
      return;
    }
    for (int l = 0; l <= used; ++l) {
      label[i] = l;
      rec(i + 1, std::max(used, l + 1));
    }
  };
  rec(0, 0);
  return best;
}

// Smallest dominator by trying every vertex subset in increasing size.
inline int dominator_bruteforce(const Cdag& c, Mask set) {
  const int n = c.size();
  for (int k = 0; k <= n; ++k)
    for (Mask d = 0; d < bit(n); ++d) {
      if (std::popcount(d) != k) continue;
      // is some target reachable from an input while avoiding d?
      std::vector<bool> seen(n, false);
      std::vector<int> st;
      for (int v = 0; v < n; ++v)
        if (c.is_input(v) && !has(d, v)) {
          seen[v] = true;
          st.push_back(v);
        }
      bool leak = false;
      while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        if (has(set, v)) leak = true;
        for (int w : c.succ(v))
          if (!seen[w] && !has(d, w)) {
            seen[w] = true;
            st.push_back(w);
          }
      }
      if (!leak) return k;
    }
  return n;
}

}  // namespace oracle
