#include "mds/reductions.hpp"

#include <algorithm>
#include <string>

namespace mds {

Hypergraph dual(const Hypergraph& h) {
  Hypergraph d;
  d.n = h.m();
  d.edges.assign(h.n, {});
  for (int e = 0; e < h.m(); ++e)
    for (int v : h.edges[e]) d.edges[v].push_back(e);
  for (int v = 0; v < h.n; ++v)
    if (d.edges[v].empty()) throw std::invalid_argument("uncoverable vertex " + std::to_string(v));
  d.names.resize(d.n);
  for (int e = 0; e < d.n; ++e) d.names[e] = "e" + std::to_string(e);
  return d;
}

Graph incidence_graph(const Hypergraph& h) {
  Graph g(h.n);
  g.names.resize(h.n);
  for (int v = 0; v < h.n; ++v) g.names[v] = h.name(v);
  for (int e = 0; e < h.m(); ++e) {
    int y = g.add_vertex(Role::EdgeVertex, "y" + std::to_string(e));
    for (int v : h.edges[e]) g.add_edge(v, y);
  }
  return g;
}

namespace {

ReductionArtifact with_apex(const Hypergraph& h, bool apex_on_vertices) {
  ReductionArtifact r;
  r.graph = incidence_graph(h);
  r.apex = r.graph.add_vertex(Role::Apex, "apex");
  const int lo = apex_on_vertices ? 0 : h.n;
  const int hi = apex_on_vertices ? h.n : h.n + h.m();
  for (int x = lo; x < hi; ++x) r.graph.add_edge(r.apex, x);
  r.domains.resize(r.graph.n());
  r.back_map.resize(r.graph.n());
  const Domain near = kSigma | kOmega, far = kOmega | kRho;
  for (int v = 0; v < h.n; ++v) {
    r.domains[v] = apex_on_vertices ? near : far;
    r.back_map[v] = {Role::Original, v};
  }
  for (int e = 0; e < h.m(); ++e) {
    r.domains[h.n + e] = apex_on_vertices ? far : near;
    r.back_map[h.n + e] = {Role::EdgeVertex, e};
  }
  r.domains[r.apex] = kSigma;
  r.back_map[r.apex] = {Role::Apex, -1};
  r.kind = apex_on_vertices ? ReductionKind::Trans : ReductionKind::Cover;
  return r;
}

}  // namespace

ReductionArtifact build_B(const Hypergraph& h) { return with_apex(h, true); }

ReductionArtifact build_C(const Hypergraph& h) {
  std::vector<bool> covered(h.n, false);
  for (const auto& e : h.edges)
    for (int v : e) covered[v] = true;
  for (int v = 0; v < h.n; ++v)
    if (!covered[v]) throw std::invalid_argument("uncoverable vertex " + std::to_string(v));
  return with_apex(h, false);
}

ReductionArtifact plain_domination(const Graph& g) {
  ReductionArtifact r;
  r.graph = g;
  r.domains.assign(g.n(), kFull);
  r.back_map.resize(g.n());
  for (int v = 0; v < g.n(); ++v) r.back_map[v] = {Role::Original, v};
  r.kind = ReductionKind::Plain;
  return r;
}

TreeDecomposition widen_td_with_apex(const TreeDecomposition& td, int apex) {
  TreeDecomposition out = td;
  for (auto& bag : out.bags) {
    if (std::find(bag.begin(), bag.end(), apex) != bag.end())
      throw std::invalid_argument("apex already present in a bag");
    bag.push_back(apex);
  }
  out.n_vertices = std::max(out.n_vertices, apex + 1);
  return out;
}

bool is_VH_minimal_transversal(const Hypergraph& h) {
  std::vector<bool> witnessed(h.n, false);
  for (const auto& e : h.edges)
    if (e.size() == 1) witnessed[e[0]] = true;
  return h.n > 0 && std::all_of(witnessed.begin(), witnessed.end(), [](bool b) { return b; });
}

}  // namespace mds
