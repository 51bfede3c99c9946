#include "mds/treedecomp.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace mds {

namespace {

std::string vname(const Graph& g, int v) {
  if (v >= 0 && v < static_cast<int>(g.names.size()) && !g.names[v].empty()) return g.names[v];
  return "v" + std::to_string(v + 1);
}

std::vector<int> sorted_copy(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Adjacency of the tree; empty result with ok=false if edges do not form a tree.
bool tree_adjacency(int nb, const std::vector<std::pair<int, int>>& edges, std::vector<std::vector<int>>& adj) {
  adj.assign(nb, {});
  if (nb == 0) return edges.empty();
  if (static_cast<int>(edges.size()) != nb - 1) return false;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= nb || b >= nb || a == b) return false;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(nb, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[x])
      if (!seen[y]) {
        seen[y] = true;
        ++count;
        stack.push_back(y);
      }
  }
  return count == nb;
}

}  // namespace

int TreeDecomposition::width() const {
  std::size_t w = 0;
  for (const auto& b : bags) w = std::max(w, b.size());
  return static_cast<int>(w) - 1;
}

const char* kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Leaf: return "leaf";
    case NodeKind::Introduce: return "introduce";
    case NodeKind::Forget: return "forget";
    case NodeKind::Join: return "join";
    case NodeKind::DisjointJoin: return "disjoint-join";
  }
  return "?";
}

ValidationReport validate_td(const Graph& g, const TreeDecomposition& td) {
  ValidationReport r;
  const int nb = static_cast<int>(td.bags.size());
  std::vector<std::vector<int>> adj;
  if (!tree_adjacency(nb, td.edges, adj)) r.problems.push_back("tree edges do not form a tree");
  std::vector<std::vector<int>> occ(g.n());
  for (int b = 0; b < nb; ++b) {
    auto bag = sorted_copy(td.bags[b]);
    if (std::adjacent_find(bag.begin(), bag.end()) != bag.end())
      r.problems.push_back("duplicate vertex in bag " + std::to_string(b + 1));
    for (int v : bag) {
      if (v < 0 || v >= g.n()) {
        r.problems.push_back("vertex " + std::to_string(v + 1) + " out of range in bag " + std::to_string(b + 1));
        continue;
      }
      occ[v].push_back(b);
    }
  }
  for (int v = 0; v < g.n(); ++v)
    if (occ[v].empty()) r.problems.push_back("vertex " + vname(g, v) + " missing");
  std::vector<std::set<int>> in_bag(nb);
  for (int b = 0; b < nb; ++b) in_bag[b] = std::set<int>(td.bags[b].begin(), td.bags[b].end());
  for (auto [u, v] : g.edges()) {
    bool covered = false;
    for (int b : occ[u])
      if (in_bag[b].count(v)) covered = true;
    if (!covered) r.problems.push_back("edge (" + vname(g, u) + "," + vname(g, v) + ") uncovered");
  }
  if (r.problems.empty() || adj.size() == static_cast<std::size_t>(nb)) {
    for (int v = 0; v < g.n(); ++v) {
      if (occ[v].size() <= 1) continue;
      std::set<int> nodes(occ[v].begin(), occ[v].end());
      std::set<int> seen{occ[v][0]};
      std::vector<int> stack{occ[v][0]};
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        if (x >= static_cast<int>(adj.size())) continue;
        for (int y : adj[x])
          if (nodes.count(y) && seen.insert(y).second) stack.push_back(y);
      }
      if (seen.size() != nodes.size()) r.problems.push_back("running intersection violated for " + vname(g, v));
    }
  }
  return r;
}

TreeDecomposition min_fill_td(const Graph& g, std::uint64_t seed) {
  const int n = g.n();
  TreeDecomposition td;
  td.n_vertices = n;
  if (n == 0) return td;
  std::vector<int> priority(n);
  std::iota(priority.begin(), priority.end(), 0);
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i < n; ++i) priority[perm[i]] = i;
  }
  std::vector<std::set<int>> adj(n);
  for (auto [u, v] : g.edges()) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<bool> gone(n, false);
  std::vector<int> order, position(n);
  std::vector<std::vector<int>> bag_of(n);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    long best_fill = std::numeric_limits<long>::max();
    for (int v = 0; v < n; ++v) {
      if (gone[v]) continue;
      long fill = 0;
      for (auto a = adj[v].begin(); a != adj[v].end(); ++a)
        for (auto b = std::next(a); b != adj[v].end(); ++b)
          if (!adj[*a].count(*b)) ++fill;
      if (fill < best_fill || (fill == best_fill && priority[v] < priority[best])) {
        best = v;
        best_fill = fill;
      }
    }
    const int v = best;
    std::vector<int> nb(adj[v].begin(), adj[v].end());
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        adj[nb[i]].insert(nb[j]);
        adj[nb[j]].insert(nb[i]);
      }
    for (int w : nb) adj[w].erase(v);
    adj[v].clear();
    gone[v] = true;
    position[v] = step;
    order.push_back(v);
    nb.push_back(v);
    bag_of[v] = sorted_copy(nb);
  }
  // Parent of v's bag: the bag of its earliest-eliminated later neighbour.
  std::vector<int> parent(n, -1);
  for (int v = 0; v < n; ++v) {
    int p = -1;
    for (int w : bag_of[v])
      if (w != v && (p < 0 || position[w] < position[p])) p = w;
    parent[v] = p;
  }
  const int root = order.back();
  for (int v = 0; v < n; ++v)
    if (parent[v] < 0 && v != root) parent[v] = root;

  // Contract bags contained in a tree neighbour.
  std::vector<int> rep(n);
  std::iota(rep.begin(), rep.end(), 0);
  std::function<int(int)> find = [&](int x) { return rep[x] == x ? x : rep[x] = find(rep[x]); };
  std::vector<std::vector<int>> bags = bag_of;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (find(v) != v || parent[v] < 0) continue;
      int p = find(parent[v]);
      if (p == v) continue;
      bool sub = std::includes(bags[p].begin(), bags[p].end(), bags[v].begin(), bags[v].end());
      bool sup = std::includes(bags[v].begin(), bags[v].end(), bags[p].begin(), bags[p].end());
      if (sub) {
        rep[v] = p;
        changed = true;
      } else if (sup) {
        bags[p] = bags[v];
        rep[v] = p;
        changed = true;
      }
    }
  }
  std::vector<int> survivors;
  for (int i = n - 1; i >= 0; --i)
    if (find(order[i]) == order[i]) survivors.push_back(order[i]);
  std::vector<int> index(n, -1);
  for (std::size_t i = 0; i < survivors.size(); ++i) index[survivors[i]] = static_cast<int>(i);
  for (int v : survivors) td.bags.push_back(bags[v]);
  for (int v : survivors) {
    if (parent[v] < 0) continue;
    int p = find(parent[v]);
    if (p == v) continue;
    int a = index[p], b = index[v];
    td.edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(td.edges.begin(), td.edges.end());
  return td;
}

TreeDecomposition parse_td(std::istream& in) {
  std::string raw;
  int lineno = 0;
  bool have_header = false;
  long nbags = 0, declared = 0;
  TreeDecomposition td;
  std::vector<bool> seen;
  auto fail = [&](const std::string& what) { throw ParseError(what + " at line " + std::to_string(lineno)); };
  auto number = [&](const std::string& s) {
    if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), ::isdigit)) fail("malformed number");
    return std::stol(s);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    std::istringstream ss(raw);
    std::vector<std::string> toks;
    for (std::string t; ss >> t;) toks.push_back(t);
    if (toks.empty() || toks[0] == "c") continue;
    if (toks[0] == "s") {
      if (have_header || toks.size() != 5 || toks[1] != "td") fail("malformed header");
      nbags = number(toks[2]);
      declared = number(toks[3]);
      td.n_vertices = static_cast<int>(number(toks[4]));
      td.bags.assign(nbags, {});
      seen.assign(nbags, false);
      have_header = true;
      continue;
    }
    if (!have_header) fail("malformed header");
    if (toks[0] == "b") {
      if (toks.size() < 2) fail("malformed bag line");
      long id = number(toks[1]);
      if (id < 1 || id > nbags) fail("bag id mismatch");
      if (seen[id - 1]) fail("duplicate bag id");
      seen[id - 1] = true;
      for (std::size_t i = 2; i < toks.size(); ++i) {
        long v = number(toks[i]);
        if (v < 1 || v > td.n_vertices) fail("vertex id out of range");
        td.bags[id - 1].push_back(static_cast<int>(v - 1));
      }
      continue;
    }
    if (toks.size() != 2) fail("malformed edge line");
    long a = number(toks[0]), b = number(toks[1]);
    if (a < 1 || b < 1 || a > nbags || b > nbags) fail("bag id mismatch");
    td.edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
  }
  if (!have_header) throw ParseError("missing header");
  for (long i = 0; i < nbags; ++i)
    if (!seen[i]) throw ParseError("bag id mismatch: bag " + std::to_string(i + 1) + " missing");
  std::size_t maxbag = 0;
  for (const auto& b : td.bags) maxbag = std::max(maxbag, b.size());
  if (static_cast<long>(maxbag) != declared)
    throw ParseError("declared width+1 = " + std::to_string(declared) + " but largest bag has " +
                     std::to_string(maxbag) + " vertices");
  std::vector<std::vector<int>> adj;
  if (!tree_adjacency(static_cast<int>(nbags), td.edges, adj)) throw ParseError("tree edges do not form a tree");
  return td;
}

TreeDecomposition parse_td(const std::string& text) {
  std::istringstream ss(text);
  return parse_td(ss);
}

std::string write_td(const TreeDecomposition& td) {
  std::ostringstream os;
  os << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << td.n_vertices << '\n';
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    os << "b " << i + 1;
    for (int v : td.bags[i]) os << ' ' << v + 1;
    os << '\n';
  }
  for (auto [a, b] : td.edges) os << a + 1 << ' ' << b + 1 << '\n';
  return os.str();
}

TreeDecomposition canonical_td(TreeDecomposition td) {
  for (auto& b : td.bags) std::sort(b.begin(), b.end());
  for (auto& e : td.edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(td.edges.begin(), td.edges.end());
  return td;
}

int NiceTreeDecomposition::width() const {
  std::size_t w = 0;
  for (const auto& n : nodes) w = std::max(w, n.bag.size());
  return static_cast<int>(w) - 1;
}

TreeDecomposition NiceTreeDecomposition::as_td(int n_vertices) const {
  TreeDecomposition td;
  td.n_vertices = n_vertices;
  for (const auto& n : nodes) td.bags.push_back(n.bag);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].parent >= 0) td.edges.emplace_back(nodes[i].parent, static_cast<int>(i));
  return td;
}

std::vector<int> NiceTreeDecomposition::preorder() const {
  std::vector<int> out;
  if (root < 0) return out;
  out.reserve(nodes.size());
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    out.push_back(x);
    const auto& ch = nodes[x].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

namespace {

class NiceBuilder {
 public:
  NiceBuilder(const TreeDecomposition& td, int root, bool disjoint) : td_(td), disjoint_(disjoint) {
    const int nb = static_cast<int>(td.bags.size());
    std::vector<std::vector<int>> adj;
    tree_adjacency(nb, td.edges, adj);
    rank_.assign(td.n_vertices, std::numeric_limits<int>::max());
    int next = 0;
    for (const auto& bag : td.bags)
      for (int v : bag)
        if (rank_[v] == std::numeric_limits<int>::max()) rank_[v] = next++;
    children_.assign(nb, {});
    std::vector<int> order{root}, par(nb, -1);
    std::vector<bool> seen(nb, false);
    seen[root] = true;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (int y : adj[order[i]])
        if (!seen[y]) {
          seen[y] = true;
          par[y] = order[i];
          children_[order[i]].push_back(y);
          order.push_back(y);
        }
    below_.assign(nb, {});
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      std::set<int> s(td.bags[*it].begin(), td.bags[*it].end());
      for (int c : children_[*it]) s.insert(below_[c].begin(), below_[c].end());
      below_[*it].assign(s.begin(), s.end());
    }
    for (int t = 0; t < nb; ++t) {
      auto bag = sorted_copy(td.bags[t]);
      auto key = [&](int c) {
        int best = std::numeric_limits<int>::max();
        for (int v : below_[c])
          if (!std::binary_search(bag.begin(), bag.end(), v)) best = std::min(best, rank_[v]);
        return best;
      };
      std::stable_sort(children_[t].begin(), children_[t].end(), [&](int a, int b) {
        int ka = key(a), kb = key(b);
        return ka != kb ? ka < kb : a < b;
      });
    }
  }

  NiceTreeDecomposition build(int root) {
    int top = add_node({}, -1);
    int bottom = chain(top, sorted_copy(td_.bags[root]));
    group(bottom, children_[root]);
    out_.root = top;
    for (auto& node : out_.nodes) {
      if (node.children.empty()) {
        node.kind = NodeKind::Leaf;
      } else if (node.children.size() == 2) {
        node.kind = disjoint_ ? NodeKind::DisjointJoin : NodeKind::Join;
      } else {
        const auto& cb = out_.nodes[node.children[0]].bag;
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
    return std::move(out_);
  }

 private:
  int add_node(std::vector<int> bag, int parent) {
    NiceNode n;
    n.bag = std::move(bag);
    n.parent = parent;
    out_.nodes.push_back(std::move(n));
    int id = static_cast<int>(out_.nodes.size()) - 1;
    if (parent >= 0) out_.nodes[parent].children.push_back(id);
    return id;
  }

  std::vector<int> by_rank(std::vector<int> vs) const {
    std::sort(vs.begin(), vs.end(), [&](int a, int b) { return rank_[a] < rank_[b]; });
    return vs;
  }

  // Walks down from `from` to a node with bag `target`: removals first, then additions, each in rank order.
  int chain(int from, const std::vector<int>& target) {
    std::vector<int> cur = out_.nodes[from].bag, rem, add;
    std::set_difference(cur.begin(), cur.end(), target.begin(), target.end(), std::back_inserter(rem));
    std::set_difference(target.begin(), target.end(), cur.begin(), cur.end(), std::back_inserter(add));
    int node = from;
    for (int v : by_rank(rem)) {
      cur.erase(std::lower_bound(cur.begin(), cur.end(), v));
      node = add_node(cur, node);
    }
    for (int v : by_rank(add)) {
      cur.insert(std::lower_bound(cur.begin(), cur.end(), v), v);
      node = add_node(cur, node);
    }
    return node;
  }

  void group(int node, std::vector<int> tds) {
    if (tds.empty()) {
      chain(node, {});
      return;
    }
    if (tds.size() == 1) {
      int bottom = chain(node, sorted_copy(td_.bags[tds[0]]));
      group(bottom, children_[tds[0]]);
      return;
    }
    std::set<int> under, first(below_[tds[0]].begin(), below_[tds[0]].end());
    for (int c : tds) under.insert(below_[c].begin(), below_[c].end());
    std::vector<int> y, y0, y1;
    for (int v : out_.nodes[node].bag)
      if (under.count(v)) {
        y.push_back(v);
        (first.count(v) ? y0 : y1).push_back(v);
      }
    int join = chain(node, y);
    int left = add_node(disjoint_ ? y0 : y, join);
    int right = add_node(disjoint_ ? y1 : y, join);
    group(left, {tds[0]});
    group(right, std::vector<int>(tds.begin() + 1, tds.end()));
  }

  const TreeDecomposition& td_;
  bool disjoint_;
  std::vector<int> rank_;
  std::vector<std::vector<int>> children_, below_;
  NiceTreeDecomposition out_;
};

}  // namespace

NiceTreeDecomposition make_nice_rooted(const TreeDecomposition& td, const Graph& g, int root, bool disjoint) {
  auto report = validate_td(g, td);
  if (!report.ok()) throw std::invalid_argument("invalid tree decomposition: " + report.problems.front());
  NiceTreeDecomposition nice;
  if (g.n() == 0) {
    nice.nodes.push_back(NiceNode{});
    nice.root = 0;
    return nice;
  }
  if (root < 0) {
    root = 0;
    while (td.bags[root].empty()) ++root;
  }
  TreeDecomposition sized = td;
  sized.n_vertices = std::max(td.n_vertices, g.n());
  NiceBuilder builder(sized, root, disjoint);
  return builder.build(root);
}

NiceTreeDecomposition make_nice(const TreeDecomposition& td, const Graph& g) {
  return make_nice_rooted(td, g, -1, false);
}

ValidationReport validate_nice(const NiceTreeDecomposition& nice) {
  ValidationReport r;
  auto complain = [&](std::size_t id, const std::string& what) {
    r.problems.push_back("node " + std::to_string(id) + ": " + what);
  };
  if (nice.root < 0 || nice.root >= static_cast<int>(nice.nodes.size())) {
    r.problems.push_back("missing root");
    return r;
  }
  const auto& root = nice.nodes[nice.root];
  if (!root.bag.empty()) r.problems.push_back("root bag not empty");
  if (root.kind != NodeKind::Forget && !(root.kind == NodeKind::Leaf && nice.nodes.size() == 1))
    r.problems.push_back("root is not a forget node");
  for (std::size_t i = 0; i < nice.nodes.size(); ++i) {
    const auto& n = nice.nodes[i];
    if (!std::is_sorted(n.bag.begin(), n.bag.end())) complain(i, "bag not sorted");
    for (int c : n.children)
      if (nice.nodes[c].parent != static_cast<int>(i)) complain(i, "child parent pointer mismatch");
    switch (n.kind) {
      case NodeKind::Leaf:
        if (!n.children.empty() || !n.bag.empty()) complain(i, "leaf must be empty and childless");
        break;
      case NodeKind::Introduce:
      case NodeKind::Forget: {
        if (n.children.size() != 1) {
          complain(i, "introduce/forget needs one child");
          break;
        }
        auto expect = nice.nodes[n.children[0]].bag;
        auto it = std::lower_bound(expect.begin(), expect.end(), n.vertex);
        bool present = it != expect.end() && *it == n.vertex;
        if (n.kind == NodeKind::Introduce) {
          if (present) complain(i, "introduced vertex already in child");
          else expect.insert(it, n.vertex);
        } else {
          if (!present) complain(i, "forgotten vertex not in child");
          else expect.erase(it);
        }
        if (expect != n.bag) complain(i, "bag relation broken");
        break;
      }
      case NodeKind::Join:
        if (n.children.size() != 2 || nice.nodes[n.children[0]].bag != n.bag ||
            nice.nodes[n.children[1]].bag != n.bag)
          complain(i, "join children must copy the bag");
        break;
      case NodeKind::DisjointJoin: {
        if (n.children.size() != 2) {
          complain(i, "disjoint join needs two children");
          break;
        }
        const auto& a = nice.nodes[n.children[0]].bag;
        const auto& b = nice.nodes[n.children[1]].bag;
        std::vector<int> both, uni;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(uni));
        if (!both.empty()) complain(i, "disjoint join children overlap");
        if (uni != n.bag) complain(i, "disjoint join children do not partition the bag");
        break;
      }
    }
  }
  return r;
}

std::string dump_nice(const NiceTreeDecomposition& nice, const Graph& g) {
  std::ostringstream os;
  for (int id : nice.preorder()) {
    const auto& n = nice.nodes[id];
    os << "node " << id << " kind " << kind_name(n.kind) << " bag";
    for (int v : n.bag) os << ' ' << vname(g, v);
    os << '\n';
  }
  return os.str();
}

}  // namespace mds
