#include "iolb/pebblelab/suite.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "iolb/core/error.hpp"

namespace iolb::pebble {
namespace {

int pick(Rng& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

std::optional<int> solve(const Cdag& c, const GameRules& r) {
  try {
    auto res = min_io(c, r);
    if (!res.optimal) fail(ErrorKind::cap, "search budget exhausted");
    return res.q;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::input) return std::nullopt;  // no calculation exists
    throw;
  }
}

}  // namespace

Cdag random_dag(Rng& rng, int n, int max_indeg) {
  Cdag c;
  for (int v = 0; v < n; ++v) c.add_vertex(std::to_string(v + 1));
  for (int v = 1; v < n; ++v) {
    int k = pick(rng, std::min(v, max_indeg) + 1);
    std::vector<int> cand(v);
    for (int i = 0; i < v; ++i) cand[i] = i;
    std::shuffle(cand.begin(), cand.end(), rng);
    for (int i = 0; i < k; ++i) c.add_edge(cand[i], v);
  }
  return standardize(c);
}

Calculation random_nr_calculation(const Cdag& c, int S, Rng& rng) {
  const int n = c.size();
  std::vector<bool> red(n), blue(n), fired(n);
  std::vector<int> reds;
  for (int v = 0; v < n; ++v) blue[v] = c.is_input(v);
  Calculation calc;
  auto needed = [&](int v) {
    if (c.is_output(v) && !blue[v]) return true;
    for (int s : c.succ(v))
      if (!fired[s]) return true;
    return false;
  };
  auto remove = [&](int v) {
    red[v] = false;
    reds.erase(std::find(reds.begin(), reds.end(), v));
    calc.moves.push_back({MoveKind::R4, v});
  };
  auto store = [&](int v) {
    blue[v] = true;
    calc.moves.push_back({MoveKind::R2, v});
  };
  auto evict_one = [&](const std::vector<int>& keep) {
    std::vector<int> cand;
    for (int v : reds)
      if (std::find(keep.begin(), keep.end(), v) == keep.end()) cand.push_back(v);
    if (cand.empty()) return false;
    int v = cand[pick(rng, static_cast<int>(cand.size()))];
    if (needed(v) && !blue[v]) store(v);
    remove(v);
    return true;
  };
  int left = 0;
  for (int v = 0; v < n; ++v) left += !c.is_input(v);
  while (left > 0) {
    std::vector<int> ready;
    for (int v = 0; v < n; ++v) {
      if (c.is_input(v) || fired[v]) continue;
      bool ok = true;
      for (int p : c.pred(v)) ok = ok && (c.is_input(p) || fired[p]);
      if (ok) ready.push_back(v);
    }
    const int v = ready[pick(rng, static_cast<int>(ready.size()))];
    const auto& ps = c.pred(v);
    if (static_cast<int>(ps.size()) > S) fail(ErrorKind::input, "in-degree exceeds S");
    for (int p : ps) {
      if (red[p]) continue;
      if (static_cast<int>(reds.size()) == S) evict_one(ps);
      red[p] = true;
      reds.push_back(p);
      calc.moves.push_back({MoveKind::R1, p});
    }
    fired[v] = true;
    --left;
    if (static_cast<int>(reds.size()) == S && !(pick(rng, 2) && evict_one(ps))) {
      int p = ps[pick(rng, static_cast<int>(ps.size()))];
      if (needed(p) && !blue[p]) store(p);
      calc.moves.push_back({MoveKind::R3, v});
      calc.moves.push_back({MoveKind::R4, p});
      red[p] = false;
      reds.erase(std::find(reds.begin(), reds.end(), p));
    } else {
      calc.moves.push_back({MoveKind::R3, v});
    }
    red[v] = true;
    reds.push_back(v);
    if (c.is_output(v) && pick(rng, 2)) store(v);
    for (int x : std::vector<int>(reds))
      if (!needed(x) && pick(rng, 3)) remove(x);
  }
  for (int v = 0; v < n; ++v)
    if (c.is_output(v) && !blue[v]) store(v);
  return calc;
}

std::string SuiteReport::str() const {
  std::ostringstream os;
  os << "instances: " << instances << "\n";
  for (const auto& [k, n] : checks) os << "  " << k << ": " << n << " checked\n";
  os << "violations: " << violations.size() << "\n";
  for (const auto& v : violations) os << "  " << v << "\n";
  return os.str();
}

SuiteReport run_theorem_suite(const SuiteOptions& opt) {
  SuiteReport rep;
  Rng rng(opt.seed);
  for (int inst = 0; inst < opt.count; ++inst) {
    const int S = 2 + pick(rng, 2);
    const int n = 3 + pick(rng, opt.max_vertices - 2);
    const Cdag g = random_dag(rng, n, S);
    const std::string id = "instance " + std::to_string(inst) + " (S=" + std::to_string(S) + ")";
    auto violation = [&](const std::string& what) {
      rep.violations.push_back(id + ": " + what + "\n" + g.str());
    };
    auto count = [&](const std::string& k) { ++rep.checks[k]; };
    ++rep.instances;

    auto q_std = solve(g, {S, Variant::std, true});
    auto q_nr = solve(g, {S, Variant::nr, true});
    if (!q_std || !q_nr) {
      violation("in-degree <= S but no calculation found");
      continue;
    }
    count("NR >= STD");
    if (*q_nr < *q_std) violation("NR optimum below STD optimum");
    if (auto q_ns = solve(g, {S, Variant::std, false})) {
      count("no-slide >= slide");
      if (*q_ns < *q_std) violation("optimum without slide below optimum with slide");
    }

    // partition lower bounds, both variants
    const int h_hk = hmin(g, 2 * S, PartitionDef::hk).h;
    const int h_nr = hmin(g, 2 * S, PartitionDef::nr).h;
    count("hk partition bound: Q >= S(h_min - 1)");
    if (*q_std < S * (h_hk - 1)) violation("hk partition bound fails");
    count("nr partition bound: Q >= S(H_NR - 1)");
    if (*q_nr < S * (h_nr - 1)) violation("nr partition bound fails");

    // partitions built from calculations
    std::vector<Calculation> calcs{min_io(g, {S, Variant::nr, true}).witness, random_nr_calculation(g, S, rng)};
    for (const auto& calc : calcs) {
      const int q = validate_calculation(g, {S, Variant::nr, true}, calc);
      auto part = partition_from_calculation(g, S, calc);
      auto chk = verify_partition(g, part, 2 * S, PartitionDef::nr, opt.mutate_checker);
      count("partition from calculation is valid");
      if (!chk.ok) violation("partition from calculation rejected: " + chk.violations.front() + "\n" + calc.str(g));
      if (q < S * (part.h() - 1) || part.h() < h_nr) violation("partition from calculation count relation fails");
    }

    // the checker must reject a 2-cycle between subsets
    for (int b = 0; b < g.size(); ++b) {
      if (g.pred(b).empty() || g.succ(b).empty()) continue;
      const int a = g.pred(b).front(), x = g.succ(b).front();
      Partition p;
      p.parts = {{a, x}, {b}};
      for (int v = 0; v < g.size(); ++v)
        if (v != a && v != b && v != x) p.parts.push_back({v});
      auto chk = verify_partition(g, p, g.size(), PartitionDef::hk, opt.mutate_checker);
      count("checker rejects a 2-cycle");
      bool p2 = false;
      for (const auto& s : chk.violations) p2 = p2 || s.rfind("P2", 0) == 0;
      if (chk.ok || !p2) violation("partition with a 2-cycle accepted");
      break;
    }

    // tagging on a flexible labeling: untag some sources and sinks, then tag back
    Cdag flex = g;
    TagSet t;
    for (int v = 0; v < g.size(); ++v) {
      if (g.pred(v).empty() && !g.succ(v).empty() && pick(rng, 2)) {
        flex.set_input(v, false);
        if (pick(rng, 2)) t.dI.push_back(v);
      }
      if (g.succ(v).empty() && pick(rng, 2)) flex.set_output(v, false);
      if (!flex.is_output(v) && !pick(rng, 3)) t.dO.push_back(v);
    }
    auto q_flex = solve(flex, {S, Variant::nr, true});
    auto q_tag = solve(tag(flex, t), {S, Variant::nr, true});
    if (q_flex && q_tag) {
      const int d = static_cast<int>(t.dI.size() + t.dO.size());
      count("tagging: Q' - |dI| - |dO| <= Q <= Q'");
      if (!(*q_tag - d <= *q_flex && *q_flex <= *q_tag))
        violation("tagging inequality fails: Q=" + std::to_string(*q_flex) + " Q'=" + std::to_string(*q_tag) +
                  " |dI|+|dO|=" + std::to_string(d));
    }

    // decomposition on a random two-way split
    std::vector<std::vector<int>> parts(2);
    for (int v = 0; v < g.size(); ++v) parts[pick(rng, 2)].push_back(v);
    if (parts[0].empty() || parts[1].empty()) continue;
    auto subs = decompose(g, parts);
    for (auto var : {Variant::std, Variant::nr}) {
      GameRules r{S, var, true};
      int sum = 0;
      bool all = true;
      for (const auto& sub : subs) {
        auto q = solve(sub, r);
        all = all && q;
        if (q) sum += *q;
      }
      if (!all) continue;
      auto whole = var == Variant::std ? q_std : q_nr;
      count("decomposition: sum of sub-CDAG optima <= Q (" + variant_name(var) + ")");
      if (sum > *whole) violation("decomposition fails for " + variant_name(var));
    }
  }
  return rep;
}

}  // namespace iolb::pebble
