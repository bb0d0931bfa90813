#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iolb/pebblelab/cdag.hpp"
#include "iolb/polyset/affine.hpp"
#include "iolb/polyset/count.hpp"

namespace iolb::dfg {

struct Statement {
  std::string name;
  poly::IntSet domain;
  bool input = false;
  bool output = false;
  std::string output_array;  // name given in the `output A from S` line
};

enum class EdgeClass { injective, broadcast1, broadcastk, other, skipped };
std::string class_name(EdgeClass c);

struct Edge {
  std::string name;
  int src = -1, dst = -1;
  poly::AffRelation rel;
  EdgeClass cls = EdgeClass::other;
};

// Decomposition hints: named statement groups and one optional repeat factor.
struct Group {
  std::string name;
  std::vector<int> stmts;
};
struct Repeat {
  std::string factor;
  std::vector<int> groups;
};

struct ProgramSpec {
  poly::ParamSpace params;
  std::vector<Statement> stmts;
  std::vector<Edge> edges;
  std::vector<Group> groups;
  std::optional<Repeat> repeat;

  int find(const std::string& name) const;
  int find_group(const std::string& name) const;
};

constexpr int kMaxDisjuncts = 8;

ProgramSpec parse_program(std::string_view text);
ProgramSpec load_program(const std::string& path);

// Same records with every edge classified.
using DataFlowGraph = ProgramSpec;
DataFlowGraph classify_edges(const ProgramSpec& spec);
EdgeClass classify(const poly::AffRelation& r, const poly::IntSet& dst_domain);

// Statements of one group and the edges between them.
DataFlowGraph sub_graph(const DataFlowGraph& g, const Group& group);

constexpr long long kDefaultVertexCap = 10000;

// Vertices are named like S2[1,3]. Output statements mark their sink
// instances as outputs; groups become CDAG vertex groups.
pebble::Cdag instantiate(const ProgramSpec& spec, const poly::Binding& b, long long cap = kDefaultVertexCap);
long long instance_count(const ProgramSpec& spec, const poly::Binding& b);

}  // namespace iolb::dfg
