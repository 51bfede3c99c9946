#include "mds/order.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace mds {

EnumerationOrder compute_order(const NiceDBTD& d) {
  EnumerationOrder o;
  o.P = d.tree.preorder();
  std::vector<int> pos(d.tree.nodes.size());
  for (std::size_t i = 0; i < o.P.size(); ++i) pos[o.P[i]] = static_cast<int>(i);
  o.B.assign(d.names.size(), -1);
  for (int t : o.P)
    for (int x : d.tree.nodes[t].bag)
      if (o.B[x] < 0) o.B[x] = t;
  o.Q.resize(d.names.size());
  std::iota(o.Q.begin(), o.Q.end(), 0);
  std::sort(o.Q.begin(), o.Q.end(), [&](int a, int b) {
    return pos[o.B[a]] != pos[o.B[b]] ? pos[o.B[a]] < pos[o.B[b]] : a < b;
  });
  o.rank.assign(d.names.size(), -1);
  for (std::size_t i = 0; i < o.Q.size(); ++i) o.rank[o.Q[i]] = static_cast<int>(i);
  return o;
}

ValidationReport validate_order(const NiceDBTD& d, const EnumerationOrder& o) {
  ValidationReport r;
  std::set<int> used;
  for (std::size_t x = 0; x < d.names.size(); ++x) {
    if (o.B[x] < 0) {
      r.problems.push_back("name without a bag");
      continue;
    }
    if (!used.insert(o.B[x]).second) r.problems.push_back("B is not injective");
  }
  // Earlier neighbours of v_i lie in B(v_i).
  for (std::size_t x = 0; x < d.names.size(); ++x) {
    const auto& bag = d.tree.nodes[o.B[x]].bag;
    for (int y : d.graph.neighbors(static_cast<int>(x)))
      if (o.rank[y] < o.rank[x] && !std::binary_search(bag.begin(), bag.end(), y))
        r.problems.push_back("earlier neighbour outside B");
  }
  // Later neighbours of a bag member of B(v_i) lie below B(v_i).
  std::vector<std::vector<int>> below(d.tree.nodes.size());
  for (auto it = o.P.rbegin(); it != o.P.rend(); ++it) {
    std::set<int> s(d.tree.nodes[*it].bag.begin(), d.tree.nodes[*it].bag.end());
    for (int c : d.tree.nodes[*it].children) s.insert(below[c].begin(), below[c].end());
    below[*it].assign(s.begin(), s.end());
  }
  for (std::size_t i = 0; i < o.Q.size(); ++i) {
    int t = o.B[o.Q[i]];
    const auto& bag = d.tree.nodes[t].bag;
    for (int y : bag)
      for (int z : d.graph.neighbors(y)) {
        bool later = o.rank[z] > static_cast<int>(i);
        bool under = std::binary_search(below[t].begin(), below[t].end(), z) && !std::binary_search(bag.begin(), bag.end(), z);
        if (later != under) r.problems.push_back("future neighbourhood of a B member leaves the subtree");
      }
  }
  return r;
}

}  // namespace mds
