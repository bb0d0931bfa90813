#include "iolb/pebblelab/partition.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <unordered_map>

#include "iolb/core/error.hpp"

namespace iolb::pebble {
namespace {

Mask relevant_mask(const Cdag& c, PartitionDef def) {
  Mask m = 0;
  for (int v = 0; v < c.size(); ++v)
    if (def == PartitionDef::hk || !c.is_input(v)) m |= bit(v);
  return m;
}

Mask to_mask(const std::vector<int>& vs) {
  Mask m = 0;
  for (int v : vs) m |= bit(v);
  return m;
}

// Capacity graph for unit vertex capacities.
struct Flow {
  struct Arc {
    int to, cap;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> adj;

  explicit Flow(int n) : adj(n) {}
  void add(int a, int b, int cap) {
    adj[a].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({b, cap});
    adj[b].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({a, 0});
  }
  int maxflow(int s, int t) {
    int total = 0;
    while (true) {
      std::vector<int> via(adj.size(), -1);
      std::deque<int> q{s};
      via[s] = -2;
      while (!q.empty() && via[t] == -1) {
        int x = q.front();
        q.pop_front();
        for (int a : adj[x])
          if (arcs[a].cap > 0 && via[arcs[a].to] == -1) {
            via[arcs[a].to] = a;
            q.push_back(arcs[a].to);
          }
      }
      if (via[t] == -1) return total;
      for (int x = t; x != s; x = arcs[via[x] ^ 1].to) {
        arcs[via[x]].cap -= 1;
        arcs[via[x] ^ 1].cap += 1;
      }
      ++total;
    }
  }
};

bool part_valid(const Cdag& c, Mask x, int bound, PartitionDef def) {
  if (def == PartitionDef::nr)
    return static_cast<int>(in_set(c, x).size()) <= bound && static_cast<int>(out_set(c, x).size()) <= bound;
  return static_cast<int>(min_set(c, x).size()) <= bound && min_dominator(c, x) <= bound;
}

}  // namespace

PartitionDef parse_partition_def(const std::string& s) {
  if (s == "hk" || s == "std") return PartitionDef::hk;
  if (s == "nr") return PartitionDef::nr;
  fail(ErrorKind::usage, "partition definition must be hk or nr, got " + s);
}

std::string Partition::str(const Cdag& c) const {
  std::string s;
  for (const auto& p : parts) {
    s += "{";
    for (size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + c.name(p[i]);
    s += "}";
  }
  return s;
}

std::vector<int> in_set(const Cdag& c, Mask set) {
  std::vector<int> out;
  for (int u = 0; u < c.size(); ++u) {
    if (has(set, u)) continue;
    for (int w : c.succ(u))
      if (has(set, w)) {
        out.push_back(u);
        break;
      }
  }
  return out;
}

std::vector<int> out_set(const Cdag& c, Mask set) {
  std::vector<int> out;
  for (int v : members(set)) {
    bool leaves = c.is_output(v);
    for (int w : c.succ(v)) leaves = leaves || !has(set, w);
    if (leaves) out.push_back(v);
  }
  return out;
}

std::vector<int> min_set(const Cdag& c, Mask set) {
  std::vector<int> out;
  for (int v : members(set)) {
    bool inside = false;
    for (int w : c.succ(v)) inside = inside || has(set, w);
    if (!inside) out.push_back(v);
  }
  return out;
}

int min_dominator(const Cdag& c, Mask set) {
  const int n = c.size(), S = 2 * n, T = 2 * n + 1, inf = n + 1;
  Flow f(2 * n + 2);
  for (int v = 0; v < n; ++v) {
    f.add(2 * v, 2 * v + 1, 1);
    for (int w : c.succ(v)) f.add(2 * v + 1, 2 * w, inf);
    if (c.is_input(v)) f.add(S, 2 * v, inf);
    if (has(set, v)) f.add(2 * v + 1, T, inf);
  }
  return f.maxflow(S, T);
}

Partition partition_from_calculation(const Cdag& c, int S, const Calculation& calc) {
  const int q = validate_calculation(c, GameRules{S, Variant::nr, true}, calc);
  const int h = std::max(1, (q + S - 1) / S);
  std::vector<std::vector<int>> blocks(h);
  int io = 0;
  for (const auto& m : calc.moves) {
    if (m.kind == MoveKind::R1 || m.kind == MoveKind::R2) {
      ++io;
      continue;
    }
    if (m.kind == MoveKind::R3) blocks[std::min(io / S, h - 1)].push_back(m.v);
  }
  Partition p;
  for (auto& b : blocks)
    if (!b.empty()) p.parts.push_back(std::move(b));
  return p;
}

PartitionCheck verify_partition(const Cdag& c, const Partition& p, int bound, PartitionDef def, bool skip_acyclicity) {
  PartitionCheck res;
  auto violate = [&](const std::string& s) {
    res.ok = false;
    res.violations.push_back(s);
  };
  const Mask relevant = relevant_mask(c, def);
  std::vector<int> owner(c.size(), -1);
  for (int i = 0; i < p.h(); ++i) {
    if (p.parts[i].empty()) violate("P1: subset " + std::to_string(i + 1) + " is empty");
    for (int v : p.parts[i]) {
      if (!has(relevant, v)) violate("P1: input " + c.name(v) + " cannot belong to a subset");
      else if (owner[v] >= 0) violate("P1: " + c.name(v) + " is in two subsets");
      else owner[v] = i;
    }
  }
  for (int v : members(relevant))
    if (owner[v] < 0) violate("P1: " + c.name(v) + " is in no subset");
  if (!res.ok) return res;

  if (!skip_acyclicity) {
    std::vector<std::vector<int>> qsucc(p.h());
    std::vector<int> indeg(p.h(), 0);
    for (int v = 0; v < c.size(); ++v)
      for (int w : c.succ(v))
        if (owner[v] >= 0 && owner[w] >= 0 && owner[v] != owner[w]) {
          auto& s = qsucc[owner[v]];
          if (std::find(s.begin(), s.end(), owner[w]) == s.end()) {
            s.push_back(owner[w]);
            ++indeg[owner[w]];
          }
        }
    std::vector<int> ready;
    for (int i = 0; i < p.h(); ++i)
      if (!indeg[i]) ready.push_back(i);
    for (size_t k = 0; k < ready.size(); ++k)
      for (int j : qsucc[ready[k]])
        if (--indeg[j] == 0) ready.push_back(j);
    if (static_cast<int>(ready.size()) != p.h()) violate("P2: cyclic dependence between subsets");
  }

  for (int i = 0; i < p.h(); ++i) {
    const Mask x = to_mask(p.parts[i]);
    const std::string tag = "subset " + std::to_string(i + 1);
    if (def == PartitionDef::nr) {
      auto in = in_set(c, x).size(), out = out_set(c, x).size();
      if (static_cast<int>(in) > bound) violate("P3: " + tag + " has |In| = " + std::to_string(in) + " > " + std::to_string(bound));
      if (static_cast<int>(out) > bound)
        violate("P4: " + tag + " has |Out| = " + std::to_string(out) + " > " + std::to_string(bound));
    } else {
      int dom = min_dominator(c, x);
      auto mn = min_set(c, x).size();
      if (dom > bound) violate("P3: " + tag + " needs a dominator of size " + std::to_string(dom) + " > " + std::to_string(bound));
      if (static_cast<int>(mn) > bound)
        violate("P4: " + tag + " has |Min| = " + std::to_string(mn) + " > " + std::to_string(bound));
    }
  }
  return res;
}

HminResult hmin(const Cdag& c, int bound, PartitionDef def, int max_downsets) {
  const Mask relevant = relevant_mask(c, def);
  const int n = std::popcount(relevant);
  if (c.size() > kMaxMaskVertices) fail(ErrorKind::cap, "h_min search supports at most 64 vertices");
  HminResult res;
  if (n == 0) return res;
  std::vector<Mask> preds(c.size(), 0);
  for (int v = 0; v < c.size(); ++v)
    for (int p : c.pred(v))
      if (has(relevant, p)) preds[v] |= bit(p);
  auto closed = [&](Mask m) {
    for (int v : members(m))
      if (preds[v] & ~m) return false;
    return true;
  };
  // Small posets: every subset of the complement is a candidate part.
  // Larger ones: only differences of two listed downsets.
  std::vector<Mask> downsets;
  const bool listed = n > 12;
  if (listed) {
    std::unordered_map<Mask, bool> known{{0, true}};
    downsets.push_back(0);
    for (size_t i = 0; i < downsets.size(); ++i)
      for (int v : members(relevant & ~downsets[i])) {
        Mask d = downsets[i] | bit(v);
        if ((preds[v] & ~downsets[i]) || known.count(d)) continue;
        known[d] = true;
        downsets.push_back(d);
        if (static_cast<int>(downsets.size()) > max_downsets)
          fail(ErrorKind::cap, "h_min search: more than " + std::to_string(max_downsets) + " downward closed sets");
      }
  }
  std::unordered_map<Mask, std::pair<int, Mask>> seen;  // downset -> (h, previous downset)
  std::unordered_map<Mask, bool> valid;
  auto visit = [&](Mask U, Mask next, std::deque<Mask>& q) {
    const Mask X = next & ~U;
    auto it = valid.find(X);
    if (it == valid.end()) it = valid.emplace(X, part_valid(c, X, bound, def)).first;
    if (!it->second) return;
    seen[next] = {seen[U].first + 1, U};
    q.push_back(next);
  };
  std::deque<Mask> q{0};
  seen[0] = {0, 0};
  while (!q.empty() && !seen.count(relevant)) {
    const Mask U = q.front();
    q.pop_front();
    if (listed) {
      for (Mask D : downsets)
        if (D != U && (D & U) == U && !seen.count(D)) visit(U, D, q);
    } else {
      const Mask comp = relevant & ~U;
      for (Mask X = comp; X; X = (X - 1) & comp)
        if (!seen.count(U | X) && closed(U | X)) visit(U, U | X, q);
    }
  }
  if (!seen.count(relevant)) fail(ErrorKind::check, "no valid partition exists for this bound");
  res.h = seen[relevant].first;
  for (Mask U = relevant; U; U = seen[U].second) res.witness.parts.push_back(members(U & ~seen[U].second));
  std::reverse(res.witness.parts.begin(), res.witness.parts.end());
  return res;
}

}  // namespace iolb::pebble
