#include <algorithm>
#include <functional>
#include <limits>

#include "mds/enumeration.hpp"
#include "mds/oracle.hpp"

namespace mds {

namespace {

struct NameFacts {
  std::vector<std::vector<int>> scope;  // neighbour names of all descendants
  std::vector<int> freeze;              // rank of the first child copy, or N
};

NameFacts name_facts(const NiceDBTD& d, const EnumerationOrder& o) {
  const int N = static_cast<int>(d.names.size());
  NameFacts f;
  f.scope.resize(N);
  f.freeze.assign(N, N);
  for (int x = 0; x < N; ++x) {
    std::vector<int> st{x};
    while (!st.empty()) {
      int z = st.back();
      st.pop_back();
      for (int w : d.graph.neighbors(z)) f.scope[x].push_back(w);
      for (int c : d.names[z].child)
        if (c >= 0) st.push_back(c);
    }
    std::sort(f.scope[x].begin(), f.scope[x].end());
    f.scope[x].erase(std::unique(f.scope[x].begin(), f.scope[x].end()), f.scope[x].end());
    for (int c : d.names[x].child)
      if (c >= 0) f.freeze[x] = std::min(f.freeze[x], o.rank[c]);
  }
  return f;
}

}  // namespace

BruteExtendable::BruteExtendable(const Graph& g, const EnumContext& ctx) {
  const NiceDBTD& d = *ctx.dbtd;
  const EnumerationOrder& o = *ctx.order;
  const int N = static_cast<int>(d.names.size());
  const NameFacts facts = name_facts(d, o);

  for (const auto& D : brute_minimal_dominating_sets(g)) {
    std::vector<bool> inD(g.n(), false);
    for (int v : D) inD[v] = true;
    std::vector<int> cnt(g.n(), 0);
    for (int v = 0; v < g.n(); ++v)
      for (int u : g.neighbors(v))
        if (inD[u]) ++cnt[v];
    auto private_of = [&](int w, int v) {
      if (inD[w] || cnt[w] != 1) return false;
      return g.adjacent(w, v);
    };
    std::vector<bool> has_private(g.n(), false);
    for (int v : D)
      for (int w : g.neighbors(v))
        if (private_of(w, v)) has_private[v] = true;

    // Label of name x once the first t ranks are assigned.
    std::function<std::uint8_t(int, int)> label_at = [&](int x, int t) -> std::uint8_t {
      t = std::min(t, facts.freeze[x]);
      const int v = d.names[x].orig;
      const auto& sc = facts.scope[x];
      if (inD[v]) {
        if (cnt[v] == 0 && !has_private[v]) return SI;
        for (int w : sc)
          if (o.rank[w] >= t && private_of(d.names[w].orig, v)) return S1;
        return S0;
      }
      if (cnt[v] == 1) {
        for (int w : sc)
          if (o.rank[w] >= t && inD[d.names[w].orig]) return W1;
        return W0;
      }
      int assigned = 0;
      for (int w : sc)
        if (o.rank[w] < t && inD[d.names[w].orig]) ++assigned;
      int base = 2;
      const int p = d.names[x].parent;
      if (p >= 0) {
        const std::uint8_t pl = label_at(p, facts.freeze[p]);
        if (pl == W0) return W0;
        auto total = [&](int c) {
          int k = 0;
          for (int w : facts.scope[c])
            if (inD[d.names[w].orig]) ++k;
          return k;
        };
        const int side = d.names[p].child[0] == x ? 0 : 1;
        const int n0 = total(d.names[p].child[0]), n1 = total(d.names[p].child[1]);
        const int need = counter(pl);
        std::uint8_t pair[2];
        if (need == 2) {
          if (n0 >= 1 && n1 >= 1) pair[0] = pair[1] = R1;
          else if (n1 == 0) pair[0] = R2, pair[1] = W0;
          else pair[0] = W0, pair[1] = R2;
        } else if (need == 1) {
          if (n1 >= 1) pair[0] = R0, pair[1] = R1;
          else pair[0] = R1, pair[1] = W0;
        } else {
          pair[0] = pair[1] = R0;
        }
        if (pair[side] == W0) return W0;
        base = counter(pair[side]);
      }
      return rho(std::max(0, base - assigned));
    };

    std::string full(N, '\0');
    bool ok = true;
    for (int r = 0; r < N && ok; ++r) {
      full[r] = static_cast<char>(label_at(o.Q[r], N));
      if (!in_domain(ctx.domains[o.Q[r]], static_cast<std::uint8_t>(full[r]))) ok = false;
    }
    if (!ok) continue;
    ++solutions_;
    full_.push_back(full);
    for (int i = 0; i <= N; ++i) {
      std::string key(i, '\0');
      for (int r = 0; r < i; ++r) key[r] = static_cast<char>(label_at(o.Q[r], i));
      prefixes_.insert(key);
    }
  }
}

bool BruteExtendable::operator()(const PartialLabeling& theta) const {
  std::string key(theta.i, '\0');
  for (int r = 0; r < theta.i; ++r) key[r] = static_cast<char>(theta.theta[r]);
  return prefixes_.count(key) > 0;
}

}  // namespace mds
