#include "mds/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

namespace mds {

std::unique_ptr<Prepared> prepare(ReductionArtifact artifact, const TreeDecomposition* td, std::uint64_t seed,
                                  const FactorOptions& fopts) {
  const auto start = std::chrono::steady_clock::now();
  auto p = std::make_unique<Prepared>();
  p->artifact = std::move(artifact);
  const Graph& g = p->artifact.graph;
  if (td) {
    auto rep = validate_td(g, *td);
    if (!rep.ok()) throw std::invalid_argument("invalid tree decomposition: " + rep.problems.front());
    p->td = *td;
  } else {
    p->td = min_fill_td(g, seed);
  }
  p->width = p->td.width();
  p->nice = make_nice(p->td, g);
  p->dbtd = transform_to_dbjt(p->nice, g);
  p->order = compute_order(p->dbtd);
  p->name_dom = name_domains(p->dbtd, p->artifact.domains);
  p->factors = dp_compute_factors(p->dbtd, p->order, p->name_dom, fopts);
  p->ctx = make_context(p->dbtd, p->order, p->factors, p->name_dom);
  p->prep_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return p;
}

namespace {

RunResult run(std::unique_ptr<Prepared> p, Role keep, const Emit& emit, const PipelineOptions& opts) {
  RunResult r;
  r.width = p->width;
  r.augmented = p->dbtd.names.size();
  r.trie_bytes = p->factors.trie_bytes;
  r.prep_ms = p->prep_ms;
  r.name_domains = p->name_dom;
  if (opts.stats) r.effective_width = effective_width(p->dbtd, p->name_dom);
  EnumOptions eo;
  eo.limit = opts.limit;
  eo.stats = opts.stats;
  eo.debug = opts.debug;
  eo.width = p->width;
  eo.on_check = opts.on_check;
  const auto& back = p->artifact.back_map;
  std::vector<int> out;
  r.engine = enum_ds(
      p->ctx,
      [&](const std::vector<int>& d) {
        out.clear();
        for (int v : d)
          if (back[v].role == keep) out.push_back(back[v].index);
        std::sort(out.begin(), out.end());
        return emit(out);
      },
      eo);
  return r;
}

RunResult emit_single(const std::vector<int>& s, const Emit& emit) {
  RunResult r;
  r.fast_path = true;
  r.engine.emitted = 1;
  r.engine.stopped = !emit(s);
  return r;
}

FactorOptions factor_options(const PipelineOptions& opts) {
  FactorOptions f;
  f.max_entries = opts.max_entries;
  return f;
}

}  // namespace

RunResult enumerate_dominating_sets(const Graph& g, const Emit& emit, const PipelineOptions& opts) {
  if (g.n() == 0) return emit_single({}, emit);
  return run(prepare(plain_domination(g), opts.td, opts.seed, factor_options(opts)), Role::Original, emit, opts);
}

RunResult enumerate_hitting_sets(const Hypergraph& h, const Emit& emit, const PipelineOptions& opts) {
  if (h.m() == 0) return emit_single({}, emit);
  if (is_VH_minimal_transversal(h)) {
    std::vector<int> all(h.n);
    std::iota(all.begin(), all.end(), 0);
    return emit_single(all, emit);
  }
  ReductionArtifact art = build_B(h);
  TreeDecomposition widened;
  if (opts.td) widened = widen_td_with_apex(*opts.td, art.apex);
  return run(prepare(std::move(art), opts.td ? &widened : nullptr, opts.seed, factor_options(opts)), Role::Original,
             emit, opts);
}

RunResult enumerate_edge_covers(const Hypergraph& h, const Emit& emit, const PipelineOptions& opts) {
  if (h.n == 0) return emit_single({}, emit);
  std::vector<bool> covered(h.n, false);
  for (const auto& e : h.edges)
    for (int v : e) covered[v] = true;
  if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
    RunResult r;
    r.fast_path = true;
    return r;
  }
  if (is_VH_minimal_transversal(dual(h))) {
    std::vector<int> all(h.m());
    std::iota(all.begin(), all.end(), 0);
    return emit_single(all, emit);
  }
  ReductionArtifact art = build_C(h);
  TreeDecomposition widened;
  if (opts.td) widened = widen_td_with_apex(*opts.td, art.apex);
  return run(prepare(std::move(art), opts.td ? &widened : nullptr, opts.seed, factor_options(opts)),
             Role::EdgeVertex, emit, opts);
}

Graph path_graph(int n) {
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph cycle_graph(int n) {
  Graph g = path_graph(n);
  if (n >= 3) g.add_edge(n - 1, 0);
  return g;
}

Graph erdos_renyi(int n, double p, std::mt19937_64& rng) {
  Graph g(n);
  std::bernoulli_distribution coin(p);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

GraphWithTD partial_ktree(int n, int k, double keep, std::mt19937_64& rng) {
  GraphWithTD r{Graph(n), {}};
  r.td.n_vertices = n;
  std::bernoulli_distribution coin(keep);
  std::vector<std::vector<int>> clique(n);  // earlier neighbours in the k-tree
  std::vector<int> bag_of(n, -1);
  std::vector<std::vector<int>> cliques;  // k-cliques available for attachment
  for (int v = 0; v < n; ++v) {
    std::vector<int> c;
    if (v <= k) {
      for (int u = 0; u < v; ++u) c.push_back(u);
    } else {
      c = cliques[std::uniform_int_distribution<std::size_t>(0, cliques.size() - 1)(rng)];
    }
    clique[v] = c;
    for (int u : c)
      if (coin(rng)) r.graph.add_edge(u, v);
    std::vector<int> bag = c;
    bag.push_back(v);
    bag_of[v] = static_cast<int>(r.td.bags.size());
    r.td.bags.push_back(bag);
    if (!c.empty()) r.td.edges.emplace_back(bag_of[*std::max_element(c.begin(), c.end())], bag_of[v]);
    if (static_cast<int>(bag.size()) == k + 1)
      for (std::size_t drop = 0; drop < bag.size(); ++drop) {
        std::vector<int> s;
        for (std::size_t j = 0; j < bag.size(); ++j)
          if (j != drop) s.push_back(bag[j]);
        cliques.push_back(s);
      }
  }
  return r;
}

Hypergraph random_hypergraph(int n, int m, std::mt19937_64& rng) {
  Hypergraph h;
  h.n = n;
  if (n == 0) return h;
  std::uniform_int_distribution<int> size(1, std::max(1, std::min(n, 4)));
  for (int e = 0; e < m; ++e) {
    std::vector<int> vs(n);
    std::iota(vs.begin(), vs.end(), 0);
    std::shuffle(vs.begin(), vs.end(), rng);
    vs.resize(size(rng));
    std::sort(vs.begin(), vs.end());
    h.edges.push_back(vs);
  }
  return h;
}

std::vector<Graph> all_graphs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::vector<Graph> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    Graph g(n);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1) g.add_edge(pairs[i].first, pairs[i].second);
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace mds
