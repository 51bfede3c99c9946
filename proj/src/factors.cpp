#include "mds/factors.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace mds {

FactorTrie FactorTrie::from_sorted(const std::vector<std::string>& keys, int depth) {
  FactorTrie t;
  t.depth_ = depth;
  t.paths_ = keys.size();
  if (keys.empty() || depth == 0) return t;
  struct Range {
    std::size_t lo, hi;
  };
  std::vector<Range> level{{0, keys.size()}};
  for (int l = 0; l < depth; ++l) {
    std::vector<Range> next;
    std::uint32_t next_id = static_cast<std::uint32_t>(t.mask_.size() + level.size());
    for (const auto& r : level) {
      std::uint8_t mask = 0;
      std::uint32_t first = next_id;
      std::size_t i = r.lo;
      while (i < r.hi) {
        auto lab = static_cast<std::uint8_t>(keys[i][l]);
        std::size_t j = i;
        while (j < r.hi && static_cast<std::uint8_t>(keys[j][l]) == lab) ++j;
        mask |= static_cast<std::uint8_t>(1u << lab);
        if (l + 1 < depth) {
          next.push_back({i, j});
          ++next_id;
        }
        i = j;
      }
      t.mask_.push_back(mask);
      t.first_.push_back(first);
    }
    level = std::move(next);
  }
  return t;
}

bool FactorTrie::lookup(const std::uint8_t* labels) const {
  if (paths_ == 0) return false;
  if (depth_ == 0) return true;
  std::uint32_t node = 0;
  for (int l = 0; l < depth_; ++l) {
    const std::uint8_t m = mask_[node];
    const std::uint8_t lab = labels[l];
    if (lab >= kLabels || !((m >> lab) & 1)) return false;
    if (l + 1 == depth_) return true;
    node = first_[node] + static_cast<std::uint32_t>(__builtin_popcount(m & ((1u << lab) - 1)));
  }
  return true;
}

bool FactorTrie::lookup(const std::string& key) const {
  if (static_cast<int>(key.size()) != depth_) throw std::invalid_argument("wrong-length labeling");
  return lookup(reinterpret_cast<const std::uint8_t*>(key.data()));
}

std::vector<std::string> FactorTrie::keys() const {
  std::vector<std::string> out;
  if (paths_ == 0) return out;
  if (depth_ == 0) return {""};
  std::string cur(depth_, '\0');
  auto walk = [&](auto&& self, std::uint32_t node, int l) -> void {
    const std::uint8_t m = mask_[node];
    int k = 0;
    for (int lab = 0; lab < kLabels; ++lab) {
      if (!((m >> lab) & 1)) continue;
      cur[l] = static_cast<char>(lab);
      if (l + 1 == depth_) out.push_back(cur);
      else self(self, first_[node] + k, l + 1);
      ++k;
    }
  };
  walk(walk, 0, 0);
  return out;
}

void trie_insert(FactorTrie& t, const std::string& key) {
  if (trie_lookup(t, key)) return;
  auto keys = t.keys();
  keys.insert(std::lower_bound(keys.begin(), keys.end(), key), key);
  t = FactorTrie::from_sorted(keys, t.depth());
}

bool trie_lookup(const FactorTrie& t, const std::string& key) { return t.lookup(key); }

namespace {

using Table = std::vector<std::string>;

int index_of(const std::vector<int>& v, int x) {
  auto it = std::find(v.begin(), v.end(), x);
  return it == v.end() ? -1 : static_cast<int>(it - v.begin());
}

struct TripleSlots {
  int v, a, b;
  Domain dom;
};

class FactorDP {
 public:
  FactorDP(const NiceDBTD& d, const EnumerationOrder& o, const std::vector<Domain>& dom, const FactorOptions& opts)
      : d_(d), o_(o), dom_(dom), opts_(opts) {}

  Factors run() {
    const auto& nodes = d_.tree.nodes;
    Factors f;
    f.bag_order.resize(nodes.size());
    for (std::size_t u = 0; u < nodes.size(); ++u) {
      auto& ord = f.bag_order[u];
      ord = nodes[u].bag;
      std::sort(ord.begin(), ord.end(), [&](int a, int b) { return o_.rank[a] < o_.rank[b]; });
    }
    order_ = &f.bag_order;
    std::vector<bool> is_b(nodes.size(), false);
    for (int t : o_.B) is_b[t] = true;
    f.tries.resize(nodes.size());
    if (opts_.keep_tables) f.tables.resize(nodes.size());
    std::vector<Table> tables(nodes.size());
    for (auto it = o_.P.rbegin(); it != o_.P.rend(); ++it) {
      const int u = *it;
      const auto& node = nodes[u];
      switch (node.kind) {
        case NodeKind::Leaf: tables[u] = {std::string()}; break;
        case NodeKind::Introduce: tables[u] = introduce(u, tables[node.children[0]]); break;
        case NodeKind::Forget: tables[u] = forget(u, tables[node.children[0]]); break;
        case NodeKind::DisjointJoin:
          tables[u] = join(u, tables[node.children[0]], tables[node.children[1]]);
          break;
        case NodeKind::Join: throw std::invalid_argument("join node in a disjoint-branch decomposition");
      }
      f.total_entries += tables[u].size();
      if (opts_.max_entries && f.total_entries > opts_.max_entries)
        throw CapError("factor tables exceed " + std::to_string(opts_.max_entries) + " entries");
      if (is_b[u] || opts_.all_tries) {
        f.tries[u] = FactorTrie::from_sorted(tables[u], static_cast<int>(node.bag.size()));
        f.trie_bytes += f.tries[u].bytes();
      }
      for (int c : node.children)
        if (opts_.keep_tables) f.tables[c] = std::move(tables[c]);
        else Table().swap(tables[c]);
    }
    f.root_nonempty = !tables[d_.tree.root].empty();
    if (opts_.keep_tables) f.tables[d_.tree.root] = std::move(tables[d_.tree.root]);
    return f;
  }

 private:
  const std::vector<int>& ord(int u) const { return (*order_)[u]; }

  std::vector<TripleSlots> triple_slots(int u, int only = -1) const {
    std::vector<TripleSlots> out;
    const auto& o = ord(u);
    for (int t : d_.node_triples[u]) {
      const auto& tr = d_.triples[t];
      if (only >= 0 && tr.v != only && tr.v0 != only && tr.v1 != only) continue;
      out.push_back({index_of(o, tr.v), index_of(o, tr.v0), index_of(o, tr.v1), dom_[tr.v]});
    }
    return out;
  }

  static bool kappa_ok(const std::string& key, const std::vector<TripleSlots>& ts) {
    for (const auto& t : ts) {
      int lv = t.v < 0 ? -1 : key[t.v], la = t.a < 0 ? -1 : key[t.a], lb = t.b < 0 ? -1 : key[t.b];
      if (!triple_satisfiable(lv, la, lb, t.dom)) return false;
    }
    return true;
  }

  static Table finish(std::unordered_set<std::string>& s) {
    Table t(s.begin(), s.end());
    std::sort(t.begin(), t.end());
    return t;
  }

  Table introduce(int r, const Table& child) {
    const auto& node = d_.tree.nodes[r];
    const int v = node.vertex;
    const auto& o = ord(r);
    const int p = index_of(o, v);
    // The label of an original whose copies are already present is fixed by the branch constraint.
    bool determined = false;
    for (int c : d_.names[v].child)
      if (c >= 0 && std::binary_search(node.bag.begin(), node.bag.end(), c)) determined = true;
    Domain cand = dom_[v];
    if (!determined) cand &= static_cast<Domain>((1 << SI) | (1 << S0) | (1 << W0) | (1 << R0));
    const auto labels = domain_labels(cand);
    std::vector<int> nb;  // positions of in-bag neighbours of v
    std::vector<std::vector<int>> nb_of;  // for each, positions of its in-bag neighbours other than v
    for (std::size_t i = 0; i < o.size(); ++i) {
      if (static_cast<int>(i) == p || !d_.graph.adjacent(v, o[i])) continue;
      nb.push_back(static_cast<int>(i));
      std::vector<int> others;
      for (std::size_t j = 0; j < o.size(); ++j)
        if (j != i && static_cast<int>(j) != p && d_.graph.adjacent(o[i], o[j])) others.push_back(static_cast<int>(j));
      nb_of.push_back(std::move(others));
    }
    const auto ts = triple_slots(r, v);
    std::unordered_set<std::string> out;
    std::string key;
    for (const auto& k : child) {
      key = k;
      key.insert(key.begin() + p, '\0');
      for (auto c : labels) {
        key[p] = static_cast<char>(c);
        if (!pair_ok(key, c, nb, nb_of)) continue;
        if (!kappa_ok(key, ts)) continue;
        out.insert(key);
      }
    }
    return finish(out);
  }

  static bool pair_ok(const std::string& key, std::uint8_t c, const std::vector<int>& nb,
                      const std::vector<std::vector<int>>& nb_of) {
    int sigma = 0;
    for (int q : nb) sigma += is_sigma(key[q]);
    if (c == SI) {
      for (int q : nb)
        if (!is_rho(key[q])) return false;
    }
    if (is_omega(c) && sigma + counter(c) > 1) return false;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const auto y = static_cast<std::uint8_t>(key[nb[i]]);
      if (y == SI && !is_rho(c)) return false;
      if (y == S1 && c == W1) return false;
      if (c == S1 && y == W1) return false;
      if (is_omega(y) && is_sigma(c)) {
        int s = 1;
        for (int q : nb_of[i]) s += is_sigma(key[q]);
        if (s + counter(y) > 1) return false;
      }
    }
    return true;
  }

  Table forget(int r, const Table& child) {
    const auto& node = d_.tree.nodes[r];
    const int v = node.vertex;
    const int cu = node.children[0];
    const auto& oc = ord(cu);
    const int p = index_of(oc, v);
    std::unordered_set<std::string> out;
    if (d_.is_copy(v)) {
      for (const auto& k : child) {
        std::string key = k;
        key.erase(key.begin() + p);
        out.insert(std::move(key));
      }
      return finish(out);
    }
    std::vector<int> nb;
    for (std::size_t i = 0; i < oc.size(); ++i)
      if (static_cast<int>(i) != p && d_.graph.adjacent(v, oc[i])) nb.push_back(static_cast<int>(i));
    std::vector<std::vector<std::uint8_t>> options(nb.size());
    for (const auto& k : child) {
      const auto c = static_cast<std::uint8_t>(k[p]);
      int cnt[kLabels] = {0};
      for (int q : nb) ++cnt[static_cast<std::uint8_t>(k[q])];
      const int ks = cnt[S0] + cnt[S1] + cnt[SI];
      const int kw = cnt[W0] + cnt[W1];
      bool ok = true;
      switch (c) {
        case SI: ok = kw == 0 && ks == 0; break;
        case R0: case R1: case R2: ok = counter(c) + ks >= 2; break;
        case W1: ok = ks == 0; break;
        case W0: ok = cnt[SI] == 0 && ks == 1; break;
        case S1: ok = cnt[SI] == 0 && cnt[W1] == 0; break;
        case S0: ok = cnt[SI] == 0 && cnt[W1] == 0 && cnt[W0] >= 1; break;
      }
      if (!ok) continue;
      for (std::size_t i = 0; i < nb.size() && ok; ++i) {
        options[i].clear();
        remap(c, static_cast<std::uint8_t>(k[nb[i]]), options[i]);
        if (options[i].empty()) ok = false;
      }
      if (!ok) continue;
      std::string key = k;
      std::vector<std::size_t> idx(nb.size(), 0);
      while (true) {
        for (std::size_t i = 0; i < nb.size(); ++i) key[nb[i]] = static_cast<char>(options[i][idx[i]]);
        bool in_dom = true;
        for (std::size_t i = 0; i < nb.size(); ++i)
          if (!in_domain(dom_[oc[nb[i]]], static_cast<std::uint8_t>(key[nb[i]]))) in_dom = false;
        if (in_dom) {
          std::string parent = key;
          parent.erase(parent.begin() + p);
          out.insert(std::move(parent));
        }
        std::size_t i = 0;
        while (i < nb.size() && ++idx[i] == options[i].size()) idx[i++] = 0;
        if (i == nb.size()) break;
      }
    }
    return finish(out);
  }

  // Parent labels of a neighbour y whose child label is `y` once v (labelled c) leaves the bag.
  static void remap(std::uint8_t c, std::uint8_t y, std::vector<std::uint8_t>& out) {
    if (is_sigma(c)) {
      if (y == R0) {
        out = {R0, R1};
      } else if (y == R1) {
        out = {R2};
      } else if (c == SI) {
        return;
      } else if (y == S0 || y == S1) {
        out = {y};
      } else if (y == W0) {
        out = {W1};
      }
      return;
    }
    if (c == W1) {
      if (!is_sigma(y)) out = {y};
      return;
    }
    if (c == W0) {
      if (y == S0 || y == S1) out = {S1};
      else if (!is_sigma(y)) out = {y};
      return;
    }
    out = {y};
  }

  Table join(int r, const Table& left, const Table& right) {
    const auto& node = d_.tree.nodes[r];
    const auto& o = ord(r);
    const auto& o0 = ord(node.children[0]);
    const auto& o1 = ord(node.children[1]);
    std::vector<std::pair<int, int>> src(o.size());  // (side, position)
    for (std::size_t i = 0; i < o.size(); ++i) {
      int a = index_of(o0, o[i]);
      src[i] = a >= 0 ? std::make_pair(0, a) : std::make_pair(1, index_of(o1, o[i]));
    }
    // Triples split across the two sides.
    std::vector<std::pair<int, int>> pairs;
    std::vector<Domain> pair_dom;
    for (int t : d_.node_triples[r]) {
      const auto& tr = d_.triples[t];
      int a = index_of(o0, tr.v0), b = index_of(o1, tr.v1);
      if (a >= 0 && b >= 0) {
        pairs.emplace_back(a, b);
        pair_dom.push_back(dom_[tr.v]);
      }
    }
    auto signature = [&](const std::string& k, int side) {
      std::string s;
      for (auto [a, b] : pairs) s += k[side == 0 ? a : b];
      return s;
    };
    std::map<std::string, std::vector<const std::string*>> g0, g1;
    for (const auto& k : left) g0[signature(k, 0)].push_back(&k);
    for (const auto& k : right) g1[signature(k, 1)].push_back(&k);
    Table out;
    std::string key(o.size(), '\0');
    for (const auto& [s0, ks0] : g0)
      for (const auto& [s1, ks1] : g1) {
        bool ok = true;
        for (std::size_t i = 0; i < pairs.size() && ok; ++i)
          ok = triple_satisfiable(-1, s0[i], s1[i], pair_dom[i]);
        if (!ok) continue;
        for (const auto* a : ks0)
          for (const auto* b : ks1) {
            for (std::size_t i = 0; i < o.size(); ++i)
              key[i] = src[i].first == 0 ? (*a)[src[i].second] : (*b)[src[i].second];
            out.push_back(key);
          }
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  const NiceDBTD& d_;
  const EnumerationOrder& o_;
  const std::vector<Domain>& dom_;
  FactorOptions opts_;
  const std::vector<std::vector<int>>* order_ = nullptr;
};

}  // namespace

Factors dp_compute_factors(const NiceDBTD& d, const EnumerationOrder& order, const std::vector<Domain>& dom,
                           const FactorOptions& opts) {
  return FactorDP(d, order, dom, opts).run();
}

std::string dump_factor(const Factors& f, const NiceDBTD& d, int node, const Graph& g) {
  std::vector<std::string> keys = f.tables.empty() || f.tables[node].empty() ? f.tries[node].keys() : f.tables[node];
  std::ostringstream os;
  os << "bag";
  for (int x : f.bag_order[node]) os << ' ' << d.name_string(x, g);
  os << '\n';
  for (const auto& k : keys) os << labeling_string(k) << '\n';
  return os.str();
}

}  // namespace mds
