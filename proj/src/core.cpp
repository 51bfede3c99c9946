#include "mds/core.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace mds {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

bool is_number(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

[[noreturn]] void fail(const std::string& what, int line) {
  throw ParseError(what + " at line " + std::to_string(line));
}

long parse_count(const std::string& s, int line) {
  if (!is_number(s) || s.size() > 9) fail("malformed header", line);
  return std::stol(s);
}

}  // namespace

std::size_t Hypergraph::size() const {
  std::size_t s = static_cast<std::size_t>(n);
  for (const auto& e : edges) s += e.size();
  return s;
}

std::string Hypergraph::name(int v) const {
  if (v >= 0 && v < static_cast<int>(names.size()) && !names[v].empty()) return names[v];
  return std::to_string(v + 1);
}

Graph::Graph(int n) : names(), roles(n, Role::Original), adj_(n) {}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n() || v >= n()) throw std::out_of_range("vertex id out of range");
  if (u == v) throw std::invalid_argument("self-loop");
  auto& a = adj_[u];
  auto it = std::lower_bound(a.begin(), a.end(), v);
  if (it != a.end() && *it == v) return;
  a.insert(it, v);
  auto& b = adj_[v];
  b.insert(std::lower_bound(b.begin(), b.end(), u), u);
  ++m_;
}

bool Graph::adjacent(int u, int v) const {
  const auto& a = adj_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(m_);
  for (int u = 0; u < n(); ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

int Graph::add_vertex(Role role, std::string name) {
  adj_.emplace_back();
  roles.push_back(role);
  if (!name.empty() || !names.empty()) {
    names.resize(adj_.size() - 1);
    names.push_back(std::move(name));
  }
  return n() - 1;
}

std::string Graph::name(int v) const {
  if (v >= 0 && v < static_cast<int>(names.size()) && !names[v].empty()) return names[v];
  return std::to_string(v + 1);
}

Hypergraph parse_hypergraph(std::istream& in) {
  std::vector<std::pair<int, std::vector<std::string>>> lines;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    auto toks = tokenize(raw);
    if (toks.empty()) continue;
    lines.emplace_back(lineno, std::move(toks));
  }
  if (lines.empty()) throw ParseError("missing header");
  const auto& [hline, head] = lines.front();
  if (head.size() != 4 || head[0] != "p" || head[1] != "hg") fail("malformed header", hline);
  Hypergraph h;
  h.n = static_cast<int>(parse_count(head[2], hline));
  long m = parse_count(head[3], hline);

  bool symbolic = false;
  for (std::size_t i = 1; i < lines.size(); ++i)
    for (std::size_t j = 1; j < lines[i].second.size(); ++j)
      if (!is_number(lines[i].second[j])) symbolic = true;

  std::map<std::string, int> ids;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [ln, toks] = lines[i];
    if (toks[0] != "e") fail("malformed edge line", ln);
    if (toks.size() == 1) fail("empty hyperedge", ln);
    std::vector<int> e;
    for (std::size_t j = 1; j < toks.size(); ++j) {
      int v;
      if (symbolic) {
        auto it = ids.find(toks[j]);
        if (it == ids.end()) {
          v = static_cast<int>(ids.size());
          if (v >= h.n) fail("vertex id out of range", ln);
          ids.emplace(toks[j], v);
          h.names.resize(h.n);
          h.names[v] = toks[j];
        } else {
          v = it->second;
        }
      } else {
        if (toks[j].size() > 9) fail("vertex id out of range", ln);
        v = std::stoi(toks[j]) - 1;
        if (v < 0 || v >= h.n) fail("vertex id out of range", ln);
      }
      e.push_back(v);
    }
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) fail("duplicate vertex in edge", ln);
    h.edges.push_back(std::move(e));
  }
  if (static_cast<long>(h.edges.size()) != m)
    throw ParseError("edge count mismatch: header declares " + std::to_string(m) + ", found " +
                     std::to_string(h.edges.size()));
  return h;
}

Hypergraph parse_hypergraph(const std::string& text) {
  std::istringstream ss(text);
  return parse_hypergraph(ss);
}

std::string write_hypergraph(const Hypergraph& h) {
  std::ostringstream os;
  os << "p hg " << h.n << ' ' << h.m() << '\n';
  for (const auto& e : h.edges) {
    os << 'e';
    for (int v : e) os << ' ' << v + 1;
    os << '\n';
  }
  return os.str();
}

Hypergraph dedupe_edges(const Hypergraph& h) {
  Hypergraph out = h;
  out.edges.clear();
  std::set<std::vector<int>> seen;
  for (const auto& e : h.edges)
    if (seen.insert(e).second) out.edges.push_back(e);
  return out;
}

Graph parse_graph(std::istream& in) {
  std::string raw;
  int lineno = 0;
  bool have_header = false;
  long declared = 0;
  Graph g;
  std::vector<std::string> names;
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = tokenize(raw);
    if (toks.empty()) continue;
    if (toks[0] == "c") {
      if (toks.size() >= 2 && toks[1] == "names") names.assign(toks.begin() + 2, toks.end());
      continue;
    }
    if (toks[0] == "p") {
      if (have_header || toks.size() != 4 || toks[1] != "tw") fail("malformed header", lineno);
      g = Graph(static_cast<int>(parse_count(toks[2], lineno)));
      declared = parse_count(toks[3], lineno);
      have_header = true;
      continue;
    }
    if (!have_header) fail("malformed header", lineno);
    if (toks.size() != 2 || !is_number(toks[0]) || !is_number(toks[1]) || toks[0].size() > 9 ||
        toks[1].size() > 9)
      fail("malformed edge line", lineno);
    int u = std::stoi(toks[0]) - 1;
    int v = std::stoi(toks[1]) - 1;
    if (u < 0 || v < 0 || u >= g.n() || v >= g.n()) fail("vertex id out of range", lineno);
    if (u == v) fail("self-loop", lineno);
    g.add_edge(u, v);
  }
  if (!have_header) throw ParseError("missing header");
  if (!names.empty()) {
    if (static_cast<int>(names.size()) != g.n()) throw ParseError("names comment does not match vertex count");
    g.names = names;
  }
  (void)declared;
  return g;
}

Graph parse_graph(const std::string& text) {
  std::istringstream ss(text);
  return parse_graph(ss);
}

std::string write_graph(const Graph& g) {
  std::ostringstream os;
  auto es = g.edges();
  os << "p tw " << g.n() << ' ' << es.size() << '\n';
  for (auto [u, v] : es) os << u + 1 << ' ' << v + 1 << '\n';
  return os.str();
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
  std::vector<int> vs = vertices;
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  std::vector<int> pos(g.n(), -1);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i] < 0 || vs[i] >= g.n()) throw std::out_of_range("vertex id outside V(G)");
    pos[vs[i]] = static_cast<int>(i);
  }
  Graph out(static_cast<int>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) {
    out.roles[i] = g.roles[vs[i]];
    if (!g.names.empty()) {
      out.names.resize(vs.size());
      out.names[i] = g.name(vs[i]);
    }
    for (int w : g.neighbors(vs[i]))
      if (pos[w] > static_cast<int>(i)) out.add_edge(static_cast<int>(i), pos[w]);
  }
  return out;
}

}  // namespace mds
