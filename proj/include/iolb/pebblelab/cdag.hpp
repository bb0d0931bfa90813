#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace iolb::pebble {

using Mask = std::uint64_t;
constexpr int kMaxMaskVertices = 64;

inline Mask bit(int v) { return Mask{1} << v; }
inline bool has(Mask m, int v) { return (m >> v) & 1; }
std::vector<int> members(Mask m);

// (I, V, E, O) with named vertices. Sources outside I and sinks outside O are
// allowed (flexible labeling).
class Cdag {
 public:
  int size() const { return static_cast<int>(names_.size()); }
  int add_vertex(const std::string& name, bool is_input = false, bool is_output = false);
  void add_edge(int from, int to);
  int find(const std::string& name) const;
  int require(const std::string& name) const;

  const std::string& name(int v) const { return names_[v]; }
  bool is_input(int v) const { return input_[v]; }
  bool is_output(int v) const { return output_[v]; }
  void set_input(int v, bool f) { input_[v] = f; }
  void set_output(int v, bool f) { output_[v] = f; }
  const std::vector<int>& succ(int v) const { return succ_[v]; }
  const std::vector<int>& pred(int v) const { return pred_[v]; }

  // Named vertex groups carried by the file, in file order.
  std::vector<std::pair<std::string, std::vector<int>>> groups;

  std::vector<int> topo_order() const;
  // Reasons the labeling breaks the standard model: sources must be inputs,
  // sinks outputs, inputs without predecessors.
  std::vector<std::string> standard_violations() const;
  int count_inputs() const;
  int count_outputs() const;

  std::string str() const;
  static Cdag parse(std::string_view text);
  static Cdag load(const std::string& path);

 private:
  std::vector<std::string> names_;
  std::vector<bool> input_, output_;
  std::vector<std::vector<int>> succ_, pred_;
  std::map<std::string, int> index_;
};

// Induced sub-CDAGs, keeping I and O labels of the members.
std::vector<Cdag> decompose(const Cdag& c, const std::vector<std::vector<int>>& parts);
// Sources become inputs and sinks become outputs.
Cdag standardize(const Cdag& c);

struct TagSet {
  std::vector<int> dI, dO;
};
Cdag tag(const Cdag& c, const TagSet& t);

}  // namespace iolb::pebble
