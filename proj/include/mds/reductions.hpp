#pragma once

#include <vector>

#include "mds/core.hpp"
#include "mds/labels.hpp"
#include "mds/treedecomp.hpp"

namespace mds {

enum class ReductionKind { Trans, Cover, Plain };

struct Entity {
  Role role;  // Original: hypergraph vertex, EdgeVertex: y_e, Apex
  int index;  // vertex id or edge id; -1 for the apex
};

struct ReductionArtifact {
  Graph graph;
  std::vector<Domain> domains;
  std::vector<Entity> back_map;
  ReductionKind kind = ReductionKind::Plain;
  int apex = -1;
};

Hypergraph dual(const Hypergraph& h);
// Vertices 0..n-1 are V(H), n..n+m-1 are y_0..y_{m-1}.
Graph incidence_graph(const Hypergraph& h);
ReductionArtifact build_B(const Hypergraph& h);
ReductionArtifact build_C(const Hypergraph& h);
ReductionArtifact plain_domination(const Graph& g);
TreeDecomposition widen_td_with_apex(const TreeDecomposition& td, int apex);
bool is_VH_minimal_transversal(const Hypergraph& h);

}  // namespace mds
