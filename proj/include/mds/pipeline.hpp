#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "mds/dbtd.hpp"
#include "mds/enumeration.hpp"
#include "mds/factors.hpp"
#include "mds/order.hpp"
#include "mds/reductions.hpp"
#include "mds/treedecomp.hpp"

namespace mds {

// Everything computed before the first emission. Not movable: the context points into it.
struct Prepared {
  ReductionArtifact artifact;
  TreeDecomposition td;
  NiceTreeDecomposition nice;
  NiceDBTD dbtd;
  EnumerationOrder order;
  std::vector<Domain> name_dom;
  Factors factors;
  EnumContext ctx;
  int width = 0;
  double prep_ms = 0;

  Prepared() = default;
  Prepared(const Prepared&) = delete;
  Prepared& operator=(const Prepared&) = delete;
};

struct PipelineOptions {
  const TreeDecomposition* td = nullptr;  // of the input graph, or of I(H) for hypergraph problems
  std::uint64_t seed = 0;                 // min-fill tie-breaking when no decomposition is supplied
  std::uint64_t limit = 0;
  bool stats = false;
  bool debug = false;
  std::size_t max_entries = 0;
  std::function<void(const PartialLabeling&, bool)> on_check;
};

struct RunResult {
  EnumResult engine;
  bool fast_path = false;
  int width = -1;
  int effective_width = -1;
  std::size_t augmented = 0;
  std::size_t trie_bytes = 0;
  double prep_ms = 0;
  std::vector<Domain> name_domains;  // empty on fast paths
};

// `td` must decompose artifact.graph; it is validated.
std::unique_ptr<Prepared> prepare(ReductionArtifact artifact, const TreeDecomposition* td, std::uint64_t seed,
                                  const FactorOptions& fopts = {});

RunResult enumerate_dominating_sets(const Graph& g, const Emit& emit, const PipelineOptions& opts = {});
RunResult enumerate_hitting_sets(const Hypergraph& h, const Emit& emit, const PipelineOptions& opts = {});
// Emits edge ids.
RunResult enumerate_edge_covers(const Hypergraph& h, const Emit& emit, const PipelineOptions& opts = {});

// Instance generators.
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph erdos_renyi(int n, double p, std::mt19937_64& rng);
struct GraphWithTD {
  Graph graph;
  TreeDecomposition td;
};
// Random k-tree on n vertices with each edge kept with probability keep; the decomposition is the
// construction one (width min(k, n-1)).
GraphWithTD partial_ktree(int n, int k, double keep, std::mt19937_64& rng);
Hypergraph random_hypergraph(int n, int m, std::mt19937_64& rng);
// All labelled graphs on n vertices.
std::vector<Graph> all_graphs(int n);

}  // namespace mds
