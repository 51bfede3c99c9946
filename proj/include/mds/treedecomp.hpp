#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "mds/core.hpp"

namespace mds {

struct TreeDecomposition {
  std::vector<std::vector<int>> bags;  // listed order is kept; treated as sets
  std::vector<std::pair<int, int>> edges;
  int n_vertices = 0;

  int width() const;
};

struct ValidationReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

ValidationReport validate_td(const Graph& g, const TreeDecomposition& td);
TreeDecomposition min_fill_td(const Graph& g, std::uint64_t seed = 0);
TreeDecomposition parse_td(std::istream& in);
TreeDecomposition parse_td(const std::string& text);
std::string write_td(const TreeDecomposition& td);
TreeDecomposition canonical_td(TreeDecomposition td);

enum class NodeKind : std::uint8_t { Leaf, Introduce, Forget, Join, DisjointJoin };
const char* kind_name(NodeKind k);

struct NiceNode {
  NodeKind kind = NodeKind::Leaf;
  int vertex = -1;  // introduced or forgotten vertex
  std::vector<int> bag;  // sorted
  int parent = -1;
  std::vector<int> children;  // left child first
};

struct NiceTreeDecomposition {
  std::vector<NiceNode> nodes;
  int root = -1;

  int width() const;
  std::size_t size() const { return nodes.size(); }
  TreeDecomposition as_td(int n_vertices) const;
  std::vector<int> preorder() const;
};

NiceTreeDecomposition make_nice(const TreeDecomposition& td, const Graph& g);
// root < 0 picks the first non-empty bag. With disjoint=true, joins split their bag between the
// children (the input must be disjoint-branch at root).
NiceTreeDecomposition make_nice_rooted(const TreeDecomposition& td, const Graph& g, int root, bool disjoint);
// Re-derives kinds from bag relations and checks them against the stored ones.
ValidationReport validate_nice(const NiceTreeDecomposition& nice);
std::string dump_nice(const NiceTreeDecomposition& nice, const Graph& g);

}  // namespace mds
