#include "iolb/pebblelab/game.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <list>
#include <queue>
#include <unordered_map>

#include "iolb/core/error.hpp"

namespace iolb::pebble {
namespace {

const char* kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::R1: return "R1";
    case MoveKind::R2: return "R2";
    case MoveKind::R3: return "R3";
    case MoveKind::R4: return "R4";
  }
  return "?";
}

struct Graph {
  int n = 0;
  Mask all = 0, inputs = 0, outputs = 0, compute = 0;
  std::vector<Mask> preds, succs;

  explicit Graph(const Cdag& c) : n(c.size()), preds(c.size()), succs(c.size()) {
    for (int v = 0; v < n; ++v) {
      all |= bit(v);
      if (c.is_input(v)) inputs |= bit(v);
      if (c.is_output(v)) outputs |= bit(v);
      for (int p : c.pred(v)) preds[v] |= bit(p);
      for (int s : c.succ(v)) succs[v] |= bit(s);
    }
    compute = all & ~inputs;
  }
};

struct Key {
  Mask r, b, f;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  size_t operator()(const Key& k) const {
    std::uint64_t h = k.r * 0x9E3779B97F4A7C15ULL;
    h ^= (k.b + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2));
    h ^= (k.f * 0xC2B2AE3D27D4EB4FULL + (h << 6) + (h >> 2));
    return h;
  }
};

enum Action : std::uint8_t { kLoad, kStore, kFire, kSlide, kDrop };

struct Node {
  Key key;
  int parent;
  int g;
  Action act;
  std::uint8_t v, p;
};

class Search {
 public:
  Search(const Cdag& c, const GameRules& rules) : G(c), rules_(rules), nr_(rules.variant == Variant::nr) {}

  // NR: a value nobody will read again needs neither a red nor a blue pebble
  // unless it is an output still waiting for its store.
  Key canonical(Key k) const {
    if (!nr_) return k;
    Mask done = 0;
    for (int v : members(k.r | k.b))
      if ((G.succs[v] & ~k.f) == 0) done |= bit(v);
    k.r &= ~(done & (~G.outputs | k.b));
    k.b &= ~(done & ~G.outputs);
    return k;
  }

  int heuristic(const Key& k) const {
    int h = std::popcount(G.outputs & ~k.b);
    for (int v : members(G.inputs & ~k.r))
      if (G.succs[v] & ~k.f) ++h;
    if (nr_)
      for (int v : members(G.compute & k.f & ~k.r))
        if (G.succs[v] & ~k.f) ++h;
    return h;
  }

  bool goal(const Key& k) const { return (k.f & G.compute) == G.compute && (k.b & G.outputs) == G.outputs; }

  bool useful_value(const Key& k, int v) const { return nr_ ? (G.succs[v] & ~k.f) != 0 : G.succs[v] != 0; }

  template <class F>
  void successors(const Key& k, F&& emit) const {
    const int reds = std::popcount(k.r);
    if (reds < rules_.S)
      for (int v : members(k.b & ~k.r))
        if (useful_value(k, v)) emit(Key{k.r | bit(v), k.b, k.f}, kLoad, v, 0, 1);
    for (int v : members(k.r & ~k.b))
      if (has(G.outputs, v) || useful_value(k, v)) emit(Key{k.r, k.b | bit(v), k.f}, kStore, v, 0, 1);
    for (int v : members(G.compute & ~k.r)) {
      if (nr_ && has(k.f, v)) continue;
      if (G.preds[v] & ~k.r) continue;
      if (reds < rules_.S) {
        emit(Key{k.r | bit(v), k.b, k.f | bit(v)}, kFire, v, 0, 0);
      } else if (rules_.slide) {
        for (int p : members(G.preds[v]))
          emit(Key{(k.r & ~bit(p)) | bit(v), k.b, k.f | bit(v)}, kSlide, v, p, 0);
      }
    }
    for (int v : members(k.r)) emit(Key{k.r & ~bit(v), k.b, k.f}, kDrop, v, 0, 0);
  }

  SearchResult run(const SearchLimits& limits) {
    SearchResult res;
    Key start = canonical(Key{0, G.inputs, 0});
    nodes_.push_back({start, -1, 0, kDrop, 0, 0});
    index_[start] = 0;
    using Item = std::tuple<int, int, int>;  // f, -g, id
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
    open.push({heuristic(start), 0, 0});
    while (!open.empty()) {
      auto [f, ng, id] = open.top();
      open.pop();
      if (-ng != nodes_[id].g) continue;
      const Key k = nodes_[id].key;
      if (goal(k)) {
        res.q = nodes_[id].g;
        res.witness = witness(id);
        res.expanded = expanded_;
        return res;
      }
      if (++expanded_ > limits.budget) {
        res.optimal = false;
        res.witness = greedy_calculation(cdag_ref(), rules_);
        res.q = res.witness.io_count();
        res.expanded = expanded_;
        return res;
      }
      const int g = nodes_[id].g;
      successors(k, [&](Key next, Action a, int v, int p, int cost) {
        next = canonical(next);
        int ng2 = g + cost;
        auto it = index_.find(next);
        int nid;
        if (it == index_.end()) {
          nid = static_cast<int>(nodes_.size());
          nodes_.push_back({next, id, ng2, a, static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(p)});
          index_.emplace(next, nid);
        } else {
          nid = it->second;
          if (nodes_[nid].g <= ng2) return;
          nodes_[nid] = {next, id, ng2, a, static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(p)};
        }
        open.push({ng2 + heuristic(next), -ng2, nid});
      });
    }
    fail(ErrorKind::input, "no complete calculation exists with S=" + std::to_string(rules_.S));
  }

  void set_cdag(const Cdag* c) { cdag_ = c; }

 private:
  const Cdag& cdag_ref() const { return *cdag_; }

  Calculation witness(int id) const {
    std::vector<int> path;
    for (int x = id; x >= 0; x = nodes_[x].parent) path.push_back(x);
    std::reverse(path.begin(), path.end());
    Calculation calc;
    for (size_t i = 1; i < path.size(); ++i) {
      const Node& nd = nodes_[path[i]];
      Key k = nodes_[path[i - 1]].key;
      switch (nd.act) {
        case kLoad: calc.moves.push_back({MoveKind::R1, nd.v}); k.r |= bit(nd.v); break;
        case kStore: calc.moves.push_back({MoveKind::R2, nd.v}); break;
        case kFire: calc.moves.push_back({MoveKind::R3, nd.v}); k.r |= bit(nd.v); break;
        case kSlide:
          calc.moves.push_back({MoveKind::R3, nd.v});
          calc.moves.push_back({MoveKind::R4, nd.p});
          k.r = (k.r & ~bit(nd.p)) | bit(nd.v);
          break;
        case kDrop: calc.moves.push_back({MoveKind::R4, nd.v}); k.r &= ~bit(nd.v); break;
      }
      // pebbles dropped by canonicalization
      for (int v : members(k.r & ~nd.key.r)) calc.moves.push_back({MoveKind::R4, v});
    }
    return calc;
  }

  Graph G;
  GameRules rules_;
  bool nr_;
  const Cdag* cdag_ = nullptr;
  std::vector<Node> nodes_;
  std::unordered_map<Key, int, KeyHash> index_;
  long long expanded_ = 0;
};

}  // namespace

Variant parse_variant(const std::string& s) {
  if (s == "std") return Variant::std;
  if (s == "nr") return Variant::nr;
  fail(ErrorKind::usage, "variant must be std or nr, got " + s);
}

std::string variant_name(Variant v) { return v == Variant::std ? "std" : "nr"; }

int Calculation::io_count() const {
  return static_cast<int>(std::count_if(moves.begin(), moves.end(), [](const Move& m) {
    return m.kind == MoveKind::R1 || m.kind == MoveKind::R2;
  }));
}

std::string Calculation::str(const Cdag& c) const {
  std::string s;
  for (const auto& m : moves) s += (s.empty() ? "" : ", ") + std::string(kind_name(m.kind)) + "_" + c.name(m.v);
  return s;
}

Calculation parse_calculation(const Cdag& c, std::string_view text) {
  Calculation calc;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    auto us = tok.find('_');
    if (us == std::string::npos) fail(ErrorKind::input, "bad move " + tok + ", expected R<k>_<vertex>");
    std::string kind = tok.substr(0, us), id = tok.substr(us + 1);
    MoveKind k;
    if (kind == "R1") k = MoveKind::R1;
    else if (kind == "R2") k = MoveKind::R2;
    else if (kind == "R3" || kind == "R3NR") k = MoveKind::R3;
    else if (kind == "R4") k = MoveKind::R4;
    else fail(ErrorKind::input, "bad move kind in " + tok);
    calc.moves.push_back({k, c.require(id)});
    tok.clear();
  };
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',' || ch == '{' || ch == '}') flush();
    else tok += ch;
  }
  flush();
  return calc;
}

int validate_calculation(const Cdag& c, const GameRules& rules, const Calculation& calc) {
  if (rules.S < 1) fail(ErrorKind::usage, "S must be at least 1");
  const int n = c.size();
  std::vector<bool> red(n), blue(n), fired(n);
  for (int v = 0; v < n; ++v) blue[v] = c.is_input(v);
  int reds = 0, q = 0;
  const auto& mv = calc.moves;
  for (size_t i = 0; i < mv.size(); ++i) {
    const int v = mv[i].v;
    auto bad = [&](const std::string& why) {
      fail(ErrorKind::input, "move " + std::to_string(i + 1) + " (" + kind_name(mv[i].kind) + "_" + c.name(v) + "): " + why);
    };
    switch (mv[i].kind) {
      case MoveKind::R1:
        if (!blue[v]) bad("no blue pebble to load");
        if (red[v]) bad("already red");
        if (reds == rules.S) bad("more than S red pebbles");
        red[v] = true;
        ++reds;
        ++q;
        break;
      case MoveKind::R2:
        if (!red[v]) bad("no red pebble to store");
        blue[v] = true;
        ++q;
        break;
      case MoveKind::R3: {
        if (c.is_input(v)) bad("inputs are not computed");
        for (int p : c.pred(v))
          if (!red[p]) bad("predecessor " + c.name(p) + " has no red pebble");
        if (rules.variant == Variant::nr && fired[v]) bad("vertex already fired");
        if (red[v]) bad("already red");
        if (reds < rules.S) {
          red[v] = true;
          ++reds;
        } else {
          if (!rules.slide) bad("more than S red pebbles");
          if (i + 1 >= mv.size() || mv[i + 1].kind != MoveKind::R4 ||
              std::find(c.pred(v).begin(), c.pred(v).end(), mv[i + 1].v) == c.pred(v).end())
            bad("all pebbles in use and no predecessor pebble slides");
          red[mv[i + 1].v] = false;
          red[v] = true;
          ++i;
        }
        fired[v] = true;
        break;
      }
      case MoveKind::R4:
        if (!red[v]) bad("no red pebble to remove");
        red[v] = false;
        --reds;
        break;
    }
  }
  for (int v = 0; v < n; ++v) {
    if (c.is_output(v) && !blue[v]) fail(ErrorKind::input, "incomplete: output " + c.name(v) + " has no blue pebble");
    if (!c.is_input(v) && !fired[v]) fail(ErrorKind::input, "incomplete: " + c.name(v) + " never fired");
  }
  return q;
}

SearchResult min_io(const Cdag& c, const GameRules& rules, const SearchLimits& limits) {
  if (rules.S < 1) fail(ErrorKind::usage, "S must be at least 1");
  if (c.size() > limits.max_vertices || c.size() > kMaxMaskVertices)
    fail(ErrorKind::cap, "CDAG has " + std::to_string(c.size()) + " vertices, cap is " +
                             std::to_string(std::min(limits.max_vertices, kMaxMaskVertices)));
  Search s(c, rules);
  s.set_cdag(&c);
  return s.run(limits);
}

Calculation greedy_calculation(const Cdag& c, const GameRules& rules) {
  const int n = c.size();
  std::vector<bool> red(n), blue(n), fired(n);
  for (int v = 0; v < n; ++v) blue[v] = c.is_input(v);
  std::list<int> lru;
  Calculation calc;
  auto pending = [&](int v) {
    for (int s : c.succ(v))
      if (!fired[s]) return true;
    return false;
  };
  auto needed = [&](int v) { return pending(v) || (c.is_output(v) && !blue[v]); };
  auto drop = [&](int v) {
    red[v] = false;
    lru.remove(v);
    calc.moves.push_back({MoveKind::R4, v});
  };
  auto evict = [&](const std::vector<int>& keep) {
    for (int v : lru)
      if (std::find(keep.begin(), keep.end(), v) == keep.end()) {
        if (!blue[v] && needed(v)) {
          calc.moves.push_back({MoveKind::R2, v});
          blue[v] = true;
        }
        drop(v);
        return true;
      }
    return false;
  };
  auto too_small = [&] { fail(ErrorKind::input, "no complete calculation exists with S=" + std::to_string(rules.S)); };
  for (int v : c.topo_order()) {
    if (c.is_input(v)) continue;
    const auto& ps = c.pred(v);
    for (int p : ps) {
      if (red[p]) {
        lru.remove(p);
        lru.push_back(p);
        continue;
      }
      if (static_cast<int>(lru.size()) == rules.S && !evict(ps)) too_small();
      calc.moves.push_back({MoveKind::R1, p});
      red[p] = true;
      lru.push_back(p);
    }
    fired[v] = true;  // predecessors may now be dead
    if (static_cast<int>(lru.size()) < rules.S || evict(ps)) {
      calc.moves.push_back({MoveKind::R3, v});
    } else {
      if (!rules.slide || ps.empty()) too_small();
      int p = ps.front();
      for (int x : ps)
        if (!needed(x)) p = x;
      if (needed(p) && !blue[p]) {
        calc.moves.push_back({MoveKind::R2, p});
        blue[p] = true;
      }
      calc.moves.push_back({MoveKind::R3, v});
      calc.moves.push_back({MoveKind::R4, p});
      red[p] = false;
      lru.remove(p);
    }
    red[v] = true;
    lru.push_back(v);
    if (c.is_output(v)) {
      calc.moves.push_back({MoveKind::R2, v});
      blue[v] = true;
    }
    for (int x : std::vector<int>(lru.begin(), lru.end()))
      if (!needed(x)) drop(x);
  }
  return calc;
}

}  // namespace iolb::pebble
