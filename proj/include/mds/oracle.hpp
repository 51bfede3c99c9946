#pragma once

#include <vector>

#include "mds/core.hpp"

namespace mds {

using SetFamily = std::vector<std::vector<int>>;

// Sorted family of sorted sets, for set-equality checks.
SetFamily canonical(SetFamily f);

SetFamily brute_minimal_dominating_sets(const Graph& g);
SetFamily brute_minimal_transversals(const Hypergraph& h);
SetFamily brute_minimal_edge_covers(const Hypergraph& h);

// Exact treewidth by dynamic programming over vertex subsets; n <= 16.
int exact_treewidth(const Graph& g);

}  // namespace mds
