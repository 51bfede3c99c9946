#pragma once

#include <string>
#include <vector>

#include "mds/core.hpp"
#include "mds/labels.hpp"
#include "mds/treedecomp.hpp"

namespace mds {

// A vertex of the augmented universe: an original vertex renamed by a branch string.
struct Name {
  int orig = -1;
  std::string branch;  // over {0,1}
  int parent = -1;     // the name this one copies at a join, -1 for top names
  int child[2] = {-1, -1};
};

struct Triple {
  int v, v0, v1;
};

struct NiceDBTD {
  NiceTreeDecomposition tree;  // bags hold name ids
  std::vector<Name> names;
  Graph graph;  // redistributed adjacency over names
  std::vector<Triple> triples;
  std::vector<std::vector<int>> node_triples;  // triples with a member in the node's bag
  std::vector<int> origin;  // node -> node of the input nice TD, -1 for inserted nodes
  std::vector<int> origin_node;  // input nice node -> node here
  std::vector<int> top_name;  // original vertex -> its name without a parent
  int n_original = 0;

  bool is_copy(int x) const { return names[x].parent >= 0; }
  std::string name_string(int x, const Graph& g) const;
};

NiceDBTD transform_to_dbjt(const NiceTreeDecomposition& nice, const Graph& g);
// The input must be disjoint-branch when rooted at `root`; no copies are created.
NiceDBTD nice_dbtd_from_dbtd(const TreeDecomposition& td, const Graph& g, int root);

// Per name: the domain of its original.
std::vector<Domain> name_domains(const NiceDBTD& d, const std::vector<Domain>& vertex_domains);

// Projected branch constraint: labels indexed by bag position; every triple with a member in the bag
// must extend to a valid triple using labels from the absent members' domains.
bool local_constraint_eval(const NiceDBTD& d, int node, const std::string& labels, const std::vector<Domain>& dom);
bool triple_satisfiable(int v, int a, int b, Domain dom);  // -1 marks an absent member

// Number of labelings of the node's bag satisfying the projected constraint.
double constrained_labelings(const NiceDBTD& d, int node, const std::vector<Domain>& dom);
double constrained_labelings_enumerative(const NiceDBTD& d, int node, const std::vector<Domain>& dom);
int effective_width(const NiceDBTD& d, const std::vector<Domain>& dom);

ValidationReport validate_dbtd(const NiceDBTD& d, const NiceTreeDecomposition& nice, const Graph& g);
std::string dump_dbtd(const NiceDBTD& d, const Graph& g);

}  // namespace mds
