#include "mds/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

#include "mds/reductions.hpp"

namespace mds {

namespace {

std::vector<int> bits_to_set(std::uint64_t mask) {
  std::vector<int> s;
  while (mask) {
    s.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return s;
}

bool hits_all(std::uint64_t m, const std::vector<std::uint64_t>& edges) {
  for (auto e : edges)
    if (!(e & m)) return false;
  return true;
}

}  // namespace

SetFamily canonical(SetFamily f) {
  for (auto& s : f) std::sort(s.begin(), s.end());
  std::sort(f.begin(), f.end());
  return f;
}

SetFamily brute_minimal_dominating_sets(const Graph& g) {
  const int n = g.n();
  if (n > 24) throw CapError("brute_minimal_dominating_sets: n = " + std::to_string(n) + " exceeds 24");
  std::vector<std::uint32_t> closed(n);
  for (int v = 0; v < n; ++v) {
    closed[v] = 1u << v;
    for (int w : g.neighbors(v)) closed[v] |= 1u << w;
  }
  const std::uint32_t all = (1u << n) - 1;
  auto dominates = [&](std::uint32_t d) {
    std::uint32_t cov = 0;
    for (std::uint32_t r = d; r; r &= r - 1) cov |= closed[std::countr_zero(r)];
    return cov == all;
  };
  SetFamily out;
  for (std::uint32_t d = 0; d <= all; ++d) {
    if (!dominates(d)) continue;
    bool subset_minimal = true;
    for (std::uint32_t r = d; r && subset_minimal; r &= r - 1)
      if (dominates(d & ~(r & -r))) subset_minimal = false;
    // Private-neighbour characterisation: every v in D has some u in N[v] with N[u] and D meeting only in v.
    bool private_minimal = true;
    for (std::uint32_t r = d; r && private_minimal; r &= r - 1) {
      int v = std::countr_zero(r);
      bool found = false;
      for (std::uint32_t c = closed[v]; c && !found; c &= c - 1) {
        int u = std::countr_zero(c);
        if ((closed[u] & d) == (1u << v)) found = true;
      }
      private_minimal = found;
    }
    if (subset_minimal != private_minimal)
      throw std::logic_error("minimality filters disagree on dominating set");
    if (subset_minimal) out.push_back(bits_to_set(d));
  }
  return canonical(out);
}

SetFamily brute_minimal_transversals(const Hypergraph& h) {
  if (h.n > 20 || h.m() > 20) throw CapError("brute_minimal_transversals: n or m exceeds 20");
  std::vector<std::uint64_t> edges;
  for (const auto& e : h.edges) {
    std::uint64_t m = 0;
    for (int v : e) m |= 1ull << v;
    edges.push_back(m);
  }
  SetFamily out;
  const std::uint64_t limit = 1ull << h.n;
  for (std::uint64_t m = 0; m < limit; ++m) {
    if (!hits_all(m, edges)) continue;
    bool subset_minimal = true;
    for (std::uint64_t r = m; r && subset_minimal; r &= r - 1)
      if (hits_all(m & ~(r & -r), edges)) subset_minimal = false;
    bool witness_minimal = true;
    for (std::uint64_t r = m; r && witness_minimal; r &= r - 1) {
      std::uint64_t u = r & -r;
      witness_minimal = std::any_of(edges.begin(), edges.end(), [&](std::uint64_t e) { return (e & m) == u; });
    }
    if (subset_minimal != witness_minimal) throw std::logic_error("minimality filters disagree on transversal");
    if (subset_minimal) out.push_back(bits_to_set(m));
  }
  return canonical(out);
}

SetFamily brute_minimal_edge_covers(const Hypergraph& h) {
  if (h.n > 20 || h.m() > 20) throw CapError("brute_minimal_edge_covers: n or m exceeds 20");
  std::vector<std::uint64_t> edge_masks;
  for (const auto& e : h.edges) {
    std::uint64_t m = 0;
    for (int v : e) m |= 1ull << v;
    edge_masks.push_back(m);
  }
  const std::uint64_t all = (1ull << h.n) - 1;
  auto covers = [&](std::uint64_t sel) {
    std::uint64_t u = 0;
    for (std::uint64_t r = sel; r; r &= r - 1) u |= edge_masks[std::countr_zero(r)];
    return u == all;
  };
  SetFamily out;
  const std::uint64_t limit = 1ull << h.m();
  for (std::uint64_t sel = 0; sel < limit; ++sel) {
    if (!covers(sel)) continue;
    bool minimal = true;
    for (std::uint64_t r = sel; r && minimal; r &= r - 1)
      if (covers(sel & ~(r & -r))) minimal = false;
    if (minimal) out.push_back(bits_to_set(sel));
  }
  out = canonical(out);
  if (out.empty()) return out;  // some vertex lies in no edge
  if (out != brute_minimal_transversals(dual(h)))
    throw std::logic_error("edge covers disagree with transversals of the dual");
  return out;
}

int exact_treewidth(const Graph& g) {
  const int n = g.n();
  if (n > 16) throw CapError("exact_treewidth: n exceeds 16");
  if (n == 0) return -1;
  std::vector<std::uint32_t> adj(n, 0);
  for (int v = 0; v < n; ++v)
    for (int w : g.neighbors(v)) adj[v] |= 1u << w;
  // q(S, v): vertices outside S + v reachable from v through S.
  auto q = [&](std::uint32_t s, int v) {
    std::uint32_t seen = 1u << v, frontier = 1u << v, out = 0;
    while (frontier) {
      int x = std::countr_zero(frontier);
      frontier &= frontier - 1;
      std::uint32_t nb = adj[x] & ~seen;
      seen |= nb;
      out |= nb & ~s;
      frontier |= nb & s;
    }
    return std::popcount(out);
  };
  const std::uint32_t full = (1u << n) - 1;
  std::vector<int> tw(std::size_t(full) + 1, n);
  tw[0] = -1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    int best = n;
    for (std::uint32_t r = s; r; r &= r - 1) {
      int v = std::countr_zero(r);
      std::uint32_t rest = s & ~(1u << v);
      best = std::min(best, std::max(tw[rest], q(rest, v)));
    }
    tw[s] = best;
  }
  return tw[full];
}

}  // namespace mds
