#include <algorithm>
#include <set>
#include <stdexcept>

#include "mds/factors.hpp"

namespace mds {

namespace {

// Subtree facts of one node that do not depend on the chosen subset.
class NodeSemantics {
 public:
  NodeSemantics(const Graph& g, const NiceDBTD& d, const std::vector<Domain>& dom, int node,
                const std::vector<int>& bag_order)
      : g_(g), d_(d), dom_(dom), bag_(bag_order) {
    const int N = static_cast<int>(d.names.size());
    in_sub_.assign(N, false);
    in_bag_.assign(N, false);
    std::vector<int> stack{node};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int v : d.tree.nodes[x].bag) in_sub_[v] = true;
      for (int c : d.tree.nodes[x].children) stack.push_back(c);
    }
    for (int v : bag_) in_bag_[v] = true;
    orig_in_sub_.assign(g.n(), false);
    for (int x = 0; x < N; ++x)
      if (in_sub_[x]) orig_in_sub_[d.names[x].orig] = true;
    for (int v = 0; v < g.n(); ++v)
      if (orig_in_sub_[v]) origs_.push_back(v);
    if (origs_.size() > 24) throw std::invalid_argument("semantic oracle limited to 24 vertices per subtree");
    // Fully forgotten originals: no name in the bag.
    std::vector<bool> has_bag_name(g.n(), false);
    for (int v : bag_) has_bag_name[d.names[v].orig] = true;
    for (int v : origs_)
      if (!has_bag_name[v]) gone_.push_back(v);
    out_.resize(N);
    own_.resize(N);
    for (int x = 0; x < N; ++x) {
      if (!in_sub_[x]) continue;
      std::set<int> o;
      std::vector<int> st{x};
      while (!st.empty()) {
        int z = st.back();
        st.pop_back();
        for (int w : d.graph.neighbors(z))
          if (in_sub_[w] && !in_bag_[w]) o.insert(w);
        for (int c : d.names[z].child)
          if (c >= 0) st.push_back(c);
      }
      out_[x].assign(o.begin(), o.end());
      for (int w : d.graph.neighbors(x))
        if (in_sub_[w] && !in_bag_[w]) own_[x].push_back(w);
    }
  }

  const std::vector<int>& origs() const { return origs_; }

  // Calls `f(phi)` for each labeling of the bag consistent with the subset.
  template <class F>
  void for_each(const std::vector<bool>& inD, F&& f) {
    inD_ = &inD;
    const int b = static_cast<int>(bag_.size());
    std::vector<std::vector<Label>> cand(b);
    for (int i = 0; i < b; ++i) {
      cand[i] = candidates(bag_[i]);
      if (cand[i].empty()) return;
    }
    std::string phi(b, '\0');
    enumerate(cand, 0, phi, f);
  }

 private:
  int d_count(int v, const std::vector<bool>& inD) const {
    int c = 0;
    for (int u : g_.neighbors(v))
      if (inD[u]) ++c;
    return c;
  }

  bool is_private_of(int w, int v, const std::vector<bool>& inD) const {
    if (inD[w]) return false;
    int c = 0;
    bool hit = false;
    for (int u : g_.neighbors(w))
      if (inD[u]) {
        ++c;
        if (u == v) hit = true;
      }
    return c == 1 && hit && (dom_[d_.top_name[w]] & kOmega);
  }

  std::vector<Label> candidates(int x) const {
    const auto& inD = *inD_;
    const int v = d_.names[x].orig;
    int in_cnt = 0, out_cnt = 0;
    bool priv_out = false;
    for (int w : d_.graph.neighbors(x))
      if (in_bag_[w] && inD[d_.names[w].orig]) ++in_cnt;
    for (int w : out_[x]) {
      int u = d_.names[w].orig;
      if (inD[u]) ++out_cnt;
      else if (inD[v] && is_private_of(u, v, inD)) priv_out = true;
    }
    std::vector<Label> r;
    auto push = [&](Label l) {
      if (dom_[x] & (1u << static_cast<int>(l))) r.push_back(l);
    };
    if (inD[v]) {
      if (out_cnt == 0 && in_cnt == 0 && !priv_out) push(Label::SI);
      push(priv_out ? Label::S1 : Label::S0);
    } else {
      if (in_cnt + out_cnt <= 1) push(out_cnt == 0 ? Label::W0 : Label::W1);
      for (int j = 0; j <= std::min(2, out_cnt); ++j) push(static_cast<Label>(rho(j)));
    }
    return r;
  }

  // The label of x once its own forgotten neighbours are accounted for, i.e. the label its copies split.
  Label advance(int x, Label l) const {
    const auto& inD = *inD_;
    const int v = d_.names[x].orig;
    int own = 0;
    for (int w : own_[x])
      if (inD[d_.names[w].orig]) ++own;
    switch (l) {
      case Label::S1:
        for (int w : out_[x])
          if (!std::binary_search(own_[x].begin(), own_[x].end(), w) && is_private_of(d_.names[w].orig, v, inD))
            return Label::S1;
        return Label::S0;
      case Label::W1: return own ? Label::W0 : Label::W1;
      case Label::R1: case Label::R2: return static_cast<Label>(rho(std::max(0, counter(l) - own)));
      default: return l;
    }
  }

  bool gone_ok(int v, const std::vector<bool>& inD) const {
    const Domain dm = dom_[d_.top_name[v]];
    int c = d_count(v, inD);
    if (!inD[v]) return c >= 1 && ((dm & kRho) || (c == 1 && (dm & kOmega)));
    if (c == 0 && (dm & (1u << SI))) return true;
    if (!(dm & (1u << S1))) return false;
    for (int w : g_.neighbors(v))
      if (orig_gone(w) && is_private_of(w, v, inD)) return true;
    return false;
  }

  bool orig_gone(int v) const { return std::binary_search(gone_.begin(), gone_.end(), v); }

  // Labels a forgotten copy can take with its forgotten descendants.
  Domain feasible(int c) const {
    Domain m = 0;
    for (Label l : candidates(c)) {
      const auto& nm = d_.names[c];
      if (nm.child[0] < 0) {
        m |= 1u << static_cast<int>(l);
        continue;
      }
      Domain a = feasible(nm.child[0]), b = feasible(nm.child[1]);
      const Label at_split = advance(c, l);
      bool ok = false;
      for (int x = 0; x < 8 && !ok; ++x)
        for (int y = 0; y < 8 && !ok; ++y)
          if ((a >> x & 1) && (b >> y & 1) && valid_triple(at_split, static_cast<Label>(x), static_cast<Label>(y)))
            ok = true;
      if (ok) m |= 1u << static_cast<int>(l);
    }
    return m;
  }

  Domain member_set(int x, const std::string& phi, bool splitting) const {
    if (in_bag_[x]) {
      auto it = std::find(bag_.begin(), bag_.end(), x);
      Label l = static_cast<Label>(phi[it - bag_.begin()]);
      return 1u << static_cast<int>(splitting ? advance(x, l) : l);
    }
    if (in_sub_[x]) return feasible(x);
    return dom_[x];
  }

  bool accept(const std::string& phi) const {
    const auto& inD = *inD_;
    const int b = static_cast<int>(bag_.size());
    for (int i = 0; i < b; ++i) {
      if (static_cast<Label>(phi[i]) != Label::SI) continue;
      for (int w : d_.graph.neighbors(bag_[i]))
        if (in_bag_[w]) {
          auto it = std::find(bag_.begin(), bag_.end(), w);
          if (!is_rho(static_cast<Label>(phi[it - bag_.begin()]))) return false;
        }
    }
    for (const auto& t : d_.triples) {
      if (!in_bag_[t.v] && !in_bag_[t.v0] && !in_bag_[t.v1]) continue;
      Domain a = member_set(t.v, phi, true), p = member_set(t.v0, phi, false), q = member_set(t.v1, phi, false);
      bool ok = false;
      for (int x = 0; x < 8 && !ok; ++x)
        for (int y = 0; y < 8 && !ok; ++y)
          for (int z = 0; z < 8 && !ok; ++z)
            if ((a >> x & 1) && (p >> y & 1) && (q >> z & 1) &&
                valid_triple(static_cast<Label>(x), static_cast<Label>(y), static_cast<Label>(z)))
              ok = true;
      if (!ok) return false;
    }
    for (int v : gone_) {
      if (gone_ok(v, inD)) continue;
      if (!inD[v] || !(dom_[d_.top_name[v]] & (1u << S1))) return false;
      bool rescued = false;
      for (int i = 0; i < b && !rescued; ++i) {
        if (static_cast<Label>(phi[i]) != Label::W1) continue;
        for (int w : out_[bag_[i]])
          if (d_.names[w].orig == v) {
            rescued = true;
            break;
          }
      }
      if (!rescued) return false;
    }
    return true;
  }

  template <class F>
  void enumerate(const std::vector<std::vector<Label>>& cand, int i, std::string& phi, F& f) const {
    if (i == static_cast<int>(cand.size())) {
      if (accept(phi)) f(phi);
      return;
    }
    for (Label l : cand[i]) {
      phi[i] = static_cast<char>(l);
      enumerate(cand, i + 1, phi, f);
    }
  }

  const Graph& g_;
  const NiceDBTD& d_;
  const std::vector<Domain>& dom_;
  std::vector<int> bag_;
  std::vector<bool> in_sub_, in_bag_, orig_in_sub_;
  std::vector<int> origs_, gone_;
  std::vector<std::vector<int>> out_, own_;
  const std::vector<bool>* inD_ = nullptr;
};

}  // namespace

bool consistent_subset_semantics(const Graph& g, const NiceDBTD& d, const std::vector<Domain>& dom, int node,
                                 const std::vector<int>& bag_order, const std::string& phi,
                                 const std::vector<int>& subset) {
  NodeSemantics s(g, d, dom, node, bag_order);
  std::vector<bool> inD(g.n(), false);
  for (int v : subset) {
    if (!std::binary_search(s.origs().begin(), s.origs().end(), v)) return false;
    inD[v] = true;
  }
  bool found = false;
  s.for_each(inD, [&](const std::string& p) {
    if (p == phi) found = true;
  });
  return found;
}

std::vector<std::string> semantic_factor(const Graph& g, const NiceDBTD& d, const std::vector<Domain>& dom, int node,
                                         const std::vector<int>& bag_order) {
  NodeSemantics s(g, d, dom, node, bag_order);
  const auto& origs = s.origs();
  std::set<std::string> out;
  std::vector<bool> inD(g.n(), false);
  const std::uint64_t total = std::uint64_t{1} << origs.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t k = 0; k < origs.size(); ++k) inD[origs[k]] = (mask >> k) & 1;
    s.for_each(inD, [&](const std::string& p) { out.insert(p); });
  }
  return {out.begin(), out.end()};
}

}  // namespace mds
