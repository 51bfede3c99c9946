#include <doctest.h>

#include <algorithm>
#include <random>

#include "mds/oracle.hpp"
#include "mds/pipeline.hpp"
#include "mds/reductions.hpp"

using namespace mds;

namespace {

Hypergraph h012() { return parse_hypergraph("p hg 3 2\ne 1 2\ne 2 3\n"); }

int degree(const Graph& g, int v) { return static_cast<int>(g.neighbors(v).size()); }

}  // namespace

TEST_CASE("dual") {
  Hypergraph d = dual(h012());
  CHECK(d.n == 2);
  CHECK(d.edges == std::vector<std::vector<int>>{{0}, {0, 1}, {1}});
  Hypergraph d1 = dual(parse_hypergraph("p hg 1 1\ne 1\n"));
  CHECK(d1.n == 1);
  CHECK(d1.edges == std::vector<std::vector<int>>{{0}});
  CHECK_THROWS_WITH(dual(parse_hypergraph("p hg 4 1\ne 1 2 3\n")), "uncoverable vertex 3");
}

TEST_CASE("incidence graph") {
  Graph g = incidence_graph(h012());
  CHECK(g.n() == 5);
  CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 3}, {1, 3}, {1, 4}, {2, 4}});
  Graph single = incidence_graph(parse_hypergraph("p hg 1 1\ne 1\n"));
  CHECK(single.edges() == std::vector<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("incidence graph of the dual is the role swap") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    Hypergraph h = random_hypergraph(1 + t % 6, 1 + t % 5, rng);
    Hypergraph d;
    try {
      d = dual(h);
    } catch (const std::invalid_argument&) {
      continue;
    }
    Graph a = incidence_graph(h), b = incidence_graph(d);
    REQUIRE(a.n() == b.n());
    // Vertex v of H is y_v of the dual; edge e of H is vertex e of the dual.
    auto swap = [&](int x) { return x < h.n ? d.n + x : x - h.n; };
    std::vector<std::pair<int, int>> mapped;
    for (auto [u, v] : a.edges()) mapped.emplace_back(std::min(swap(u), swap(v)), std::max(swap(u), swap(v)));
    std::sort(mapped.begin(), mapped.end());
    CHECK(mapped == b.edges());
  }
}

TEST_CASE("build_B") {
  ReductionArtifact b = build_B(h012());
  CHECK(b.graph.n() == 6);
  CHECK(degree(b.graph, b.apex) == 3);
  CHECK(b.domains[b.apex] == kSigma);
  for (int v = 0; v < 3; ++v) CHECK(b.domains[v] == (kSigma | kOmega));
  for (int y = 3; y < 5; ++y) CHECK(b.domains[y] == (kOmega | kRho));

  ReductionArtifact p = build_B(parse_hypergraph("p hg 1 1\ne 1\n"));
  CHECK(p.graph.edges() == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});  // y0 - 0 - apex

  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    ReductionArtifact r = build_B(random_hypergraph(1 + t % 7, t % 6, rng));
    for (Domain d : r.domains) CHECK((domain_size(d) == 3 || domain_size(d) == 5));
    std::vector<int> idx;
    for (const auto& e : r.back_map) idx.push_back(static_cast<int>(e.role) * 1000 + e.index);
    std::sort(idx.begin(), idx.end());
    CHECK(std::adjacent_find(idx.begin(), idx.end()) == idx.end());
  }
}

TEST_CASE("build_C") {
  ReductionArtifact c = build_C(h012());
  CHECK(degree(c.graph, c.apex) == 2);
  for (int v = 0; v < 3; ++v) CHECK(c.domains[v] == (kOmega | kRho));
  CHECK_THROWS(build_C(parse_hypergraph("p hg 2 1\ne 1\n")));
}

TEST_CASE("widen_td_with_apex") {
  TreeDecomposition td;
  td.bags = {{0, 1}, {1, 2}};
  td.edges = {{0, 1}};
  td.n_vertices = 3;
  TreeDecomposition w = widen_td_with_apex(td, 3);
  CHECK(w.width() == 2);
  CHECK(w.bags.size() == td.bags.size());

  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    Hypergraph h = random_hypergraph(2 + t % 5, 1 + t % 4, rng);
    ReductionArtifact b = build_B(h);
    TreeDecomposition inc = min_fill_td(incidence_graph(h));
    CHECK(validate_td(b.graph, widen_td_with_apex(inc, b.apex)).ok());
  }
}

TEST_CASE("is_VH_minimal_transversal") {
  CHECK(is_VH_minimal_transversal(parse_hypergraph("p hg 2 2\ne 1\ne 2\n")));
  CHECK_FALSE(is_VH_minimal_transversal(parse_hypergraph("p hg 2 1\ne 1 2\n")));
  CHECK_FALSE(is_VH_minimal_transversal(parse_hypergraph("p hg 2 2\ne 1\ne 1 2\n")));
}

TEST_CASE("minimal dominating sets of B(H) project to minimal transversals") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 60; ++t) {
    Hypergraph h = random_hypergraph(1 + t % 6, 1 + t % 5, rng);
    if (is_VH_minimal_transversal(h)) continue;
    ReductionArtifact b = build_B(h);
    SetFamily projected;
    for (const auto& d : brute_minimal_dominating_sets(b.graph)) {
      if (std::find(d.begin(), d.end(), b.apex) == d.end()) continue;
      if (std::any_of(d.begin(), d.end(), [&](int v) { return v >= h.n && v != b.apex; })) continue;
      std::vector<int> m;
      for (int v : d)
        if (v < h.n) m.push_back(v);
      projected.push_back(m);
    }
    CHECK(canonical(projected) == brute_minimal_transversals(h));
  }
}
