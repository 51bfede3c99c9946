#include "mds/dbtd.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace mds {

namespace {

struct KappaTables {
  std::array<std::array<std::int8_t, 729>, 256> cache{};  // 0 unknown, 1 false, 2 true

  bool get(int v, int a, int b, Domain dom) {
    int idx = ((v + 1) * 9 + (a + 1)) * 9 + (b + 1);
    auto& slot = cache[dom][idx];
    if (slot == 0) slot = compute(v, a, b, dom) ? 2 : 1;
    return slot == 2;
  }

  static bool compute(int v, int a, int b, Domain dom) {
    for (int x = 0; x < kLabels; ++x) {
      if (v >= 0 ? x != v : !in_domain(dom, x)) continue;
      for (int y = 0; y < kLabels; ++y) {
        if (a >= 0 ? y != a : !in_domain(dom, y)) continue;
        for (int z = 0; z < kLabels; ++z) {
          if (b >= 0 ? z != b : !in_domain(dom, z)) continue;
          if (valid_triple(x, y, z)) return true;
        }
      }
    }
    return false;
  }
};

KappaTables& kappa_tables() {
  static KappaTables t;
  return t;
}

int position_in(const std::vector<int>& bag, int x) {
  auto it = std::lower_bound(bag.begin(), bag.end(), x);
  return (it != bag.end() && *it == x) ? static_cast<int>(it - bag.begin()) : -1;
}

void derive_kinds(NiceTreeDecomposition& t) {
  for (auto& node : t.nodes) {
    if (node.children.empty()) {
      node.kind = NodeKind::Leaf;
      node.vertex = -1;
    } else if (node.children.size() == 2) {
      node.kind = NodeKind::DisjointJoin;
      node.vertex = -1;
    } else {
      const auto& cb = t.nodes[node.children[0]].bag;
      std::vector<int> diff;
      if (node.bag.size() > cb.size()) {
        std::set_difference(node.bag.begin(), node.bag.end(), cb.begin(), cb.end(), std::back_inserter(diff));
        node.kind = NodeKind::Introduce;
      } else {
        std::set_difference(cb.begin(), cb.end(), node.bag.begin(), node.bag.end(), std::back_inserter(diff));
        node.kind = NodeKind::Forget;
      }
      node.vertex = diff.at(0);
    }
  }
}

void finish(NiceDBTD& d) {
  d.node_triples.assign(d.tree.nodes.size(), {});
  std::vector<int> triple_of(d.names.size(), -1);  // triple in which the name is the parent
  std::vector<std::vector<int>> member_of(d.names.size());
  for (std::size_t t = 0; t < d.triples.size(); ++t) {
    member_of[d.triples[t].v].push_back(static_cast<int>(t));
    member_of[d.triples[t].v0].push_back(static_cast<int>(t));
    member_of[d.triples[t].v1].push_back(static_cast<int>(t));
  }
  for (std::size_t u = 0; u < d.tree.nodes.size(); ++u) {
    std::set<int> ts;
    for (int x : d.tree.nodes[u].bag) ts.insert(member_of[x].begin(), member_of[x].end());
    d.node_triples[u].assign(ts.begin(), ts.end());
  }
  d.top_name.assign(d.n_original, -1);
  for (std::size_t x = 0; x < d.names.size(); ++x)
    if (d.names[x].parent < 0) d.top_name[d.names[x].orig] = static_cast<int>(x);
}

}  // namespace

bool triple_satisfiable(int v, int a, int b, Domain dom) { return kappa_tables().get(v, a, b, dom); }

std::string NiceDBTD::name_string(int x, const Graph& g) const {
  std::string s = g.name(names[x].orig);
  if (!names[x].branch.empty()) s += "_" + names[x].branch;
  return s;
}

NiceDBTD transform_to_dbjt(const NiceTreeDecomposition& nice, const Graph& g) {
  NiceDBTD d;
  d.n_original = g.n();
  const int nn = static_cast<int>(nice.nodes.size());
  std::vector<std::string> br(nn);
  std::vector<int> depth(nn, 0);
  const auto pre = nice.preorder();
  for (int t : pre) {
    const auto& node = nice.nodes[t];
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      int c = node.children[i];
      depth[c] = depth[t] + 1;
      br[c] = node.kind == NodeKind::Join ? br[t] + static_cast<char>('0' + i) : br[t];
    }
  }
  std::map<std::pair<int, std::string>, int> ids;
  auto name = [&](int v, const std::string& b) {
    auto [it, fresh] = ids.emplace(std::make_pair(v, b), static_cast<int>(d.names.size()));
    if (fresh) {
      Name n;
      n.orig = v;
      n.branch = b;
      d.names.push_back(n);
    }
    return it->second;
  };
  auto renamed = [&](const std::vector<int>& bag, const std::string& b) {
    std::vector<int> out;
    for (int v : bag) out.push_back(name(v, b));
    std::sort(out.begin(), out.end());
    return out;
  };
  auto& nodes = d.tree.nodes;
  auto add_node = [&](std::vector<int> bag, int parent, int origin) {
    NiceNode n;
    n.bag = std::move(bag);
    n.parent = parent;
    nodes.push_back(std::move(n));
    d.origin.push_back(origin);
    int id = static_cast<int>(nodes.size()) - 1;
    if (parent >= 0) nodes[parent].children.push_back(id);
    return id;
  };
  d.origin_node.assign(nn, -1);
  // (nice node, parent in the new tree); children pushed right-first so left is built first.
  std::vector<std::pair<int, int>> stack{{nice.root, -1}};
  while (!stack.empty()) {
    auto [t, parent] = stack.back();
    stack.pop_back();
    const auto& node = nice.nodes[t];
    int here = add_node(renamed(node.bag, br[t]), parent, t);
    d.origin_node[t] = here;
    if (parent < 0) d.tree.root = here;
    int below = here;
    if (node.kind == NodeKind::Join && !node.bag.empty()) {
      const std::string& s = br[t];
      std::vector<int> left, right, orig;
      for (int v : node.bag) {
        int p = name(v, s), a = name(v, s + "0"), b = name(v, s + "1");
        d.names[a].parent = d.names[b].parent = p;
        d.names[p].child[0] = a;
        d.names[p].child[1] = b;
        d.triples.push_back({p, a, b});
        orig.push_back(p);
        left.push_back(a);
        right.push_back(b);
      }
      std::vector<int> cur = nodes[here].bag;
      std::vector<int> adds = left;
      adds.insert(adds.end(), right.begin(), right.end());
      for (int x : adds) {
        cur.insert(std::lower_bound(cur.begin(), cur.end(), x), x);
        below = add_node(cur, below, -1);
      }
      for (int x : orig) {
        cur.erase(std::lower_bound(cur.begin(), cur.end(), x));
        below = add_node(cur, below, -1);
      }
    }
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) stack.emplace_back(*it, below);
  }
  derive_kinds(d.tree);

  // Each edge goes to the branch of the topmost node holding both ends.
  std::vector<int> top(g.n(), -1);
  for (int t : pre)
    for (int v : nice.nodes[t].bag)
      if (top[v] < 0) top[v] = t;
  d.graph = Graph(static_cast<int>(d.names.size()));
  d.graph.roles.assign(d.names.size(), Role::Original);
  for (std::size_t x = 0; x < d.names.size(); ++x) {
    if (d.names[x].parent >= 0) d.graph.roles[x] = Role::Copy;
    else if (d.names[x].orig < static_cast<int>(g.roles.size())) d.graph.roles[x] = g.roles[d.names[x].orig];
  }
  for (auto [x, y] : g.edges()) {
    int t = depth[top[x]] >= depth[top[y]] ? top[x] : top[y];
    auto ix = ids.find({x, br[t]}), iy = ids.find({y, br[t]});
    if (ix == ids.end() || iy == ids.end()) throw std::logic_error("edge without a common renamed bag");
    d.graph.add_edge(ix->second, iy->second);
  }
  finish(d);
  return d;
}

NiceDBTD nice_dbtd_from_dbtd(const TreeDecomposition& td, const Graph& g, int root) {
  const int nb = static_cast<int>(td.bags.size());
  if (root < 0 || root >= nb) throw std::invalid_argument("root out of range");
  std::vector<std::vector<int>> adj(nb);
  for (auto [a, b] : td.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> par(nb, -1), order{root};
  std::vector<bool> seen(nb, false);
  seen[root] = true;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int y : adj[order[i]])
      if (!seen[y]) {
        seen[y] = true;
        par[y] = order[i];
        order.push_back(y);
      }
  for (int t = 0; t < nb; ++t) {
    std::set<int> used;
    for (int c : adj[t]) {
      if (par[c] != t) continue;
      for (int v : td.bags[c])
        if (!used.insert(v).second) throw std::invalid_argument("td not disjoint-branch at the given root");
    }
  }
  NiceDBTD d;
  d.n_original = g.n();
  d.tree = make_nice_rooted(td, g, root, true);
  d.graph = g;
  for (int v = 0; v < g.n(); ++v) {
    Name n;
    n.orig = v;
    d.names.push_back(n);
  }
  d.origin.assign(d.tree.nodes.size(), -1);
  finish(d);
  return d;
}

std::vector<Domain> name_domains(const NiceDBTD& d, const std::vector<Domain>& vertex_domains) {
  std::vector<Domain> out(d.names.size());
  for (std::size_t x = 0; x < d.names.size(); ++x) out[x] = vertex_domains[d.names[x].orig];
  return out;
}

bool local_constraint_eval(const NiceDBTD& d, int node, const std::string& labels, const std::vector<Domain>& dom) {
  const auto& bag = d.tree.nodes[node].bag;
  if (labels.size() != bag.size()) throw std::invalid_argument("labeling length does not match bag");
  for (int t : d.node_triples[node]) {
    const auto& tr = d.triples[t];
    int pv = position_in(bag, tr.v), pa = position_in(bag, tr.v0), pb = position_in(bag, tr.v1);
    int lv = pv < 0 ? -1 : labels[pv], la = pa < 0 ? -1 : labels[pa], lb = pb < 0 ? -1 : labels[pb];
    if (!triple_satisfiable(lv, la, lb, dom[tr.v])) return false;
  }
  return true;
}

double constrained_labelings(const NiceDBTD& d, int node, const std::vector<Domain>& dom) {
  const auto& bag = d.tree.nodes[node].bag;
  const int b = static_cast<int>(bag.size());
  std::vector<int> comp(b);
  std::iota(comp.begin(), comp.end(), 0);
  auto find = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (int t : d.node_triples[node]) {
    const auto& tr = d.triples[t];
    int first = -1;
    for (int x : {tr.v, tr.v0, tr.v1}) {
      int p = position_in(bag, x);
      if (p < 0) continue;
      if (first < 0) first = p;
      else comp[find(p)] = find(first);
    }
  }
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < b; ++i) groups[find(i)].push_back(i);
  double total = 1;
  for (const auto& [rep, members] : groups) {
    std::set<int> ts;
    for (int p : members)
      for (int t : d.node_triples[node]) {
        const auto& tr = d.triples[t];
        if (tr.v == bag[p] || tr.v0 == bag[p] || tr.v1 == bag[p]) ts.insert(t);
      }
    std::vector<std::vector<std::uint8_t>> choices;
    for (int p : members) choices.push_back(domain_labels(dom[bag[p]]));
    std::vector<int> lab(b, -1);
    std::vector<std::size_t> idx(members.size(), 0);
    long count = 0;
    while (true) {
      for (std::size_t k = 0; k < members.size(); ++k) lab[members[k]] = choices[k][idx[k]];
      bool ok = true;
      for (int t : ts) {
        const auto& tr = d.triples[t];
        int pv = position_in(bag, tr.v), pa = position_in(bag, tr.v0), pb = position_in(bag, tr.v1);
        if (!triple_satisfiable(pv < 0 ? -1 : lab[pv], pa < 0 ? -1 : lab[pa], pb < 0 ? -1 : lab[pb], dom[tr.v])) {
          ok = false;
          break;
        }
      }
      if (ok) ++count;
      std::size_t k = 0;
      while (k < members.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
      if (k == members.size()) break;
    }
    total *= static_cast<double>(count);
  }
  return total;
}

double constrained_labelings_enumerative(const NiceDBTD& d, int node, const std::vector<Domain>& dom) {
  const auto& bag = d.tree.nodes[node].bag;
  const std::size_t b = bag.size();
  std::vector<std::vector<std::uint8_t>> choices;
  double space = 1;
  for (int x : bag) {
    choices.push_back(domain_labels(dom[x]));
    space *= static_cast<double>(choices.back().size());
  }
  if (space > 2e7) return -1;
  std::string lab(b, '\0');
  std::vector<std::size_t> idx(b, 0);
  double count = 0;
  while (true) {
    for (std::size_t k = 0; k < b; ++k) lab[k] = static_cast<char>(choices[k][idx[k]]);
    if (local_constraint_eval(d, node, lab, dom)) count += 1;
    std::size_t k = 0;
    while (k < b && ++idx[k] == choices[k].size()) idx[k++] = 0;
    if (k == b) break;
  }
  return count;
}

int effective_width(const NiceDBTD& d, const std::vector<Domain>& dom) {
  int s = 1;
  for (const auto& node : d.tree.nodes)
    for (int x : node.bag) s = std::max(s, domain_size(dom[x]));
  if (s <= 1) return 0;
  int best = 0;
  for (std::size_t u = 0; u < d.tree.nodes.size(); ++u) {
    double k = constrained_labelings(d, static_cast<int>(u), dom);
    if (k <= 1) continue;
    int e = static_cast<int>(std::ceil(std::log(k) / std::log(static_cast<double>(s)) - 1e-9));
    best = std::max(best, e);
  }
  return best;
}

ValidationReport validate_dbtd(const NiceDBTD& d, const NiceTreeDecomposition& nice, const Graph& g) {
  ValidationReport r = validate_nice(d.tree);
  for (std::size_t t = 0; t < nice.nodes.size(); ++t) {
    int u = d.origin_node[t];
    if (u < 0) {
      r.problems.push_back("node " + std::to_string(t) + " lost");
      continue;
    }
    std::vector<int> origs;
    for (int x : d.tree.nodes[u].bag) origs.push_back(d.names[x].orig);
    std::sort(origs.begin(), origs.end());
    if (origs != nice.nodes[t].bag) r.problems.push_back("node " + std::to_string(t) + " bag not a bijective rename");
  }
  // Every G-neighbour of v is reached from exactly one name of v.
  std::vector<std::multiset<int>> seen(g.n());
  for (int x = 0; x < d.graph.n(); ++x)
    for (int y : d.graph.neighbors(x)) seen[d.names[x].orig].insert(d.names[y].orig);
  for (int v = 0; v < g.n(); ++v) {
    std::multiset<int> want(g.neighbors(v).begin(), g.neighbors(v).end());
    if (seen[v] != want) r.problems.push_back("neighbourhood of " + g.name(v) + " not conserved");
  }
  // Copies split the out-of-bag neighbourhood below the join into the two subtrees.
  std::vector<std::vector<int>> under(nice.nodes.size());
  auto order = nice.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::set<int> s(nice.nodes[*it].bag.begin(), nice.nodes[*it].bag.end());
    for (int c : nice.nodes[*it].children) s.insert(under[c].begin(), under[c].end());
    under[*it].assign(s.begin(), s.end());
  }
  auto desc_neighbors = [&](int x) {
    std::multiset<int> out;
    std::vector<int> stack{x};
    while (!stack.empty()) {
      int z = stack.back();
      stack.pop_back();
      for (int y : d.graph.neighbors(z)) out.insert(d.names[y].orig);
      for (int c : d.names[z].child)
        if (c >= 0) stack.push_back(c);
    }
    return out;
  };
  for (std::size_t t = 0; t < nice.nodes.size(); ++t) {
    if (nice.nodes[t].kind != NodeKind::Join) continue;
    const auto& bag = nice.nodes[t].bag;
    const int u = d.origin_node[t];
    for (int x : d.tree.nodes[u].bag) {
      int v = d.names[x].orig;
      std::multiset<int> parts[2];
      for (int side = 0; side < 2; ++side) {
        if (d.names[x].child[side] < 0) {
          r.problems.push_back("join name without copies");
          continue;
        }
        parts[side] = desc_neighbors(d.names[x].child[side]);
      }
      std::multiset<int> expect;
      for (int w : g.neighbors(v))
        if (std::binary_search(under[t].begin(), under[t].end(), w) && !std::binary_search(bag.begin(), bag.end(), w))
          expect.insert(w);
      std::multiset<int> uni = parts[0];
      uni.insert(parts[1].begin(), parts[1].end());
      bool disjoint = std::none_of(parts[0].begin(), parts[0].end(), [&](int w) { return parts[1].count(w) > 0; });
      if (uni != expect || !disjoint)
        r.problems.push_back("copies of " + g.name(v) + " do not partition its neighbourhood below join " +
                             std::to_string(t));
    }
  }
  return r;
}

std::string dump_dbtd(const NiceDBTD& d, const Graph& g) {
  std::ostringstream os;
  for (int id : d.tree.preorder()) {
    const auto& n = d.tree.nodes[id];
    os << "node " << id << " kind " << kind_name(n.kind) << " bag";
    for (int x : n.bag) os << ' ' << d.name_string(x, g);
    os << " triples";
    for (int t : d.node_triples[id]) {
      const auto& tr = d.triples[t];
      os << " (" << d.name_string(tr.v, g) << ',' << d.name_string(tr.v0, g) << ',' << d.name_string(tr.v1, g)
         << ')';
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace mds
