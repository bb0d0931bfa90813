#include "iolb/pebblelab/cdag.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "iolb/core/error.hpp"

namespace iolb::pebble {

std::vector<int> members(Mask m) {
  std::vector<int> out;
  for (int v = 0; m; ++v, m >>= 1)
    if (m & 1) out.push_back(v);
  return out;
}

int Cdag::add_vertex(const std::string& name, bool is_input, bool is_output) {
  if (index_.count(name)) fail(ErrorKind::input, "duplicate vertex " + name);
  int v = size();
  index_[name] = v;
  names_.push_back(name);
  input_.push_back(is_input);
  output_.push_back(is_output);
  succ_.emplace_back();
  pred_.emplace_back();
  return v;
}

void Cdag::add_edge(int from, int to) {
  if (from == to) fail(ErrorKind::input, "self loop on " + names_[from]);
  if (std::find(succ_[from].begin(), succ_[from].end(), to) != succ_[from].end()) return;
  succ_[from].push_back(to);
  pred_[to].push_back(from);
}

int Cdag::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

int Cdag::require(const std::string& name) const {
  int v = find(name);
  if (v < 0) fail(ErrorKind::input, "unknown vertex " + name);
  return v;
}

std::vector<int> Cdag::topo_order() const {
  std::vector<int> indeg(size()), order;
  for (int v = 0; v < size(); ++v) indeg[v] = static_cast<int>(pred_[v].size());
  for (int v = 0; v < size(); ++v)
    if (!indeg[v]) order.push_back(v);
  for (size_t i = 0; i < order.size(); ++i)
    for (int w : succ_[order[i]])
      if (--indeg[w] == 0) order.push_back(w);
  if (static_cast<int>(order.size()) != size()) fail(ErrorKind::input, "graph has a cycle");
  return order;
}

std::vector<std::string> Cdag::standard_violations() const {
  std::vector<std::string> out;
  for (int v = 0; v < size(); ++v) {
    if (pred_[v].empty() && !input_[v]) out.push_back("source " + names_[v] + " is not an input");
    if (succ_[v].empty() && !output_[v]) out.push_back("sink " + names_[v] + " is not an output");
    if (input_[v] && !pred_[v].empty()) out.push_back("input " + names_[v] + " has predecessors");
  }
  return out;
}

int Cdag::count_inputs() const { return static_cast<int>(std::count(input_.begin(), input_.end(), true)); }
int Cdag::count_outputs() const { return static_cast<int>(std::count(output_.begin(), output_.end(), true)); }

std::string Cdag::str() const {
  std::ostringstream os;
  for (int v = 0; v < size(); ++v) {
    os << "v " << names_[v];
    if (input_[v]) os << " input";
    if (output_[v]) os << " output";
    os << "\n";
  }
  for (int v = 0; v < size(); ++v)
    for (int w : succ_[v]) os << "e " << names_[v] << " " << names_[w] << "\n";
  for (const auto& [g, vs] : groups) {
    os << "g " << g;
    for (int v : vs) os << " " << names_[v];
    os << "\n";
  }
  return os.str();
}

Cdag Cdag::parse(std::string_view text) {
  Cdag c;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto bad = [&](const std::string& msg) { fail(ErrorKind::input, "line " + std::to_string(lineno) + ": " + msg); };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind == "v") {
      std::string id, flag;
      if (!(ls >> id)) bad("vertex id expected");
      bool is_in = false, is_out = false;
      while (ls >> flag) {
        if (flag == "input") is_in = true;
        else if (flag == "output") is_out = true;
        else bad("unknown vertex flag " + flag);
      }
      if (c.find(id) >= 0) bad("duplicate vertex " + id);
      c.add_vertex(id, is_in, is_out);
    } else if (kind == "e") {
      std::string a, b, extra;
      if (!(ls >> a >> b)) bad("edge needs two ids");
      if (ls >> extra) bad("trailing text after edge");
      if (c.find(a) < 0 || c.find(b) < 0) bad("edge uses an undeclared vertex");
      c.add_edge(c.find(a), c.find(b));
    } else if (kind == "g") {
      std::string g, id;
      if (!(ls >> g)) bad("group name expected");
      std::vector<int> vs;
      while (ls >> id) {
        if (c.find(id) < 0) bad("group uses an undeclared vertex " + id);
        vs.push_back(c.find(id));
      }
      c.groups.emplace_back(g, vs);
    } else {
      bad("unknown record " + kind);
    }
  }
  c.topo_order();
  return c;
}

Cdag Cdag::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorKind::input, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

std::vector<Cdag> decompose(const Cdag& c, const std::vector<std::vector<int>>& parts) {
  std::vector<int> owner(c.size(), -1);
  for (size_t p = 0; p < parts.size(); ++p)
    for (int v : parts[p]) {
      if (v < 0 || v >= c.size()) fail(ErrorKind::input, "partition names a missing vertex");
      if (owner[v] >= 0) fail(ErrorKind::input, "vertex " + c.name(v) + " is in two parts");
      owner[v] = static_cast<int>(p);
    }
  for (int v = 0; v < c.size(); ++v)
    if (owner[v] < 0) fail(ErrorKind::input, "vertex " + c.name(v) + " is in no part");
  std::vector<Cdag> out(parts.size());
  for (size_t p = 0; p < parts.size(); ++p)
    for (int v : parts[p]) out[p].add_vertex(c.name(v), c.is_input(v), c.is_output(v));
  for (int v = 0; v < c.size(); ++v)
    for (int w : c.succ(v))
      if (owner[v] == owner[w]) {
        auto& sub = out[owner[v]];
        sub.add_edge(sub.find(c.name(v)), sub.find(c.name(w)));
      }
  return out;
}

Cdag standardize(const Cdag& c) {
  Cdag s = c;
  for (int v = 0; v < s.size(); ++v) {
    if (s.pred(v).empty()) s.set_input(v, true);
    if (s.succ(v).empty()) s.set_output(v, true);
  }
  return s;
}

Cdag tag(const Cdag& c, const TagSet& t) {
  Cdag s = c;
  for (int v : t.dI) s.set_input(v, true);
  for (int v : t.dO) s.set_output(v, true);
  return s;
}

}  // namespace iolb::pebble
