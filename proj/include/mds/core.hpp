#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mds {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Hypergraph {
  int n = 0;
  std::vector<std::vector<int>> edges;
  std::vector<std::string> names;

  int m() const { return static_cast<int>(edges.size()); }
  std::size_t size() const;
  std::string name(int v) const;
};

enum class Role : std::uint8_t { Original, EdgeVertex, Apex, Copy };

class Graph {
 public:
  explicit Graph(int n = 0);

  int n() const { return static_cast<int>(adj_.size()); }
  std::size_t edge_count() const { return m_; }
  void add_edge(int u, int v);
  bool adjacent(int u, int v) const;
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  std::vector<std::pair<int, int>> edges() const;
  int add_vertex(Role role = Role::Original, std::string name = {});

  std::string name(int v) const;

  std::vector<std::string> names;
  std::vector<Role> roles;

 private:
  std::vector<std::vector<int>> adj_;
  std::size_t m_ = 0;
};

Hypergraph parse_hypergraph(std::istream& in);
Hypergraph parse_hypergraph(const std::string& text);
std::string write_hypergraph(const Hypergraph& h);
Hypergraph dedupe_edges(const Hypergraph& h);

Graph parse_graph(std::istream& in);
Graph parse_graph(const std::string& text);
std::string write_graph(const Graph& g);

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices);

}  // namespace mds
