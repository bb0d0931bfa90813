#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iolb/dfgraph/program.hpp"
#include "iolb/paramlp/plp.hpp"

namespace iolb::path {

using dfg::DataFlowGraph;

enum class PathKind { circuit, broadcast };

struct Path {
  PathKind kind = PathKind::circuit;
  std::vector<int> edges;
  poly::AffRelation relation;
  bool accepted = false;
  std::string reason;  // rejection reason, or the direction for accepted paths
  poly::Subspace direction;  // translation span or kernel of the inverse map
  poly::IntSet frontier;     // circuits only
  std::vector<asym::Monomial> charges;  // tagged sources this path needs

  std::string str(const DataFlowGraph& g) const;
};

struct CliqueEntry {
  poly::Subspace k;
  std::vector<poly::Subspace> K;
  poly::IntSet D;
  std::vector<int> T;      // statement indices, sorted
  std::vector<int> paths;  // indices into VertexAnalysis::paths
  std::vector<asym::Monomial> charges;
};

struct Solved {
  plp::ExpLP lp;
  plp::PiecewiseSolution sol;
  asym::AsymBound bound;
};

struct VertexAnalysis {
  int vertex = -1;
  std::vector<poly::Subspace> subspaces;
  std::vector<CliqueEntry> clique;
  std::vector<Path> paths;
  std::optional<Solved> result;
  int chosen = -1;         // clique entry behind result
  bool spanning = false;   // found by try, not by best
  bool orthogonal = true;  // pass that produced the result
  std::vector<std::string> trace;

  const asym::AsymBound& complexity() const;
};

struct Options {
  int max_len = 4;
  bool trace = false;
};

std::vector<Path> enumerate_circuits(const DataFlowGraph& g, int v, int max_len);
std::vector<Path> enumerate_broadcast_paths(const DataFlowGraph& g, int v, dfg::EdgeClass family, int max_len);

Solved solve(const poly::IntSet& D, const std::vector<poly::Subspace>& K, const std::vector<asym::Monomial>& charges);

// Runs the circuit, F_B and F_BB families in order, then best(). A first pass
// only accepts cliques with an orthogonal adapted basis; when it finds no
// spanning clique, a second pass allows any adapted basis.
VertexAnalysis analyze_vertex(const DataFlowGraph& g, int v, const Options& opts = {});

// Operates on one pass state; exposed for tests.
class VertexState {
 public:
  VertexState(const DataFlowGraph& g, int v, bool orthogonal);
  // Add the path at this index of analysis().paths.
  bool try_add(int path);
  void best();
  VertexAnalysis& analysis() { return a_; }

 private:
  const DataFlowGraph& g_;
  VertexAnalysis a_;
  poly::IntSet dom_;
  int d_;
};

struct GraphAnalysis {
  std::vector<VertexAnalysis> vertices;
  asym::AsymBound total;
};
GraphAnalysis analyze_graph(const DataFlowGraph& g, const Options& opts = {});

struct GroupAnalysis {
  std::string name;
  GraphAnalysis graph;
  std::vector<asym::Monomial> input_tags;
  asym::AsymBound bound;
  bool repeated = false;
};

struct ProgramAnalysis {
  std::vector<GroupAnalysis> groups;  // one unnamed group when no hints are given
  asym::AsymBound total;
  std::vector<std::string> warnings;
};
// Per-group analysis, input tags subtracted per group, repeated groups
// summed and scaled by the repeat factor.
ProgramAnalysis analyze_program(const DataFlowGraph& g, const Options& opts = {});

// The case that holds when every parameter is large.
const asym::BoundCase& leading_case(const asym::AsymBound& b);
std::string render_leading(const asym::AsymBound& b);

}  // namespace iolb::path
