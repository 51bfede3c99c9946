#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mds/dbtd.hpp"
#include "mds/labels.hpp"
#include "mds/order.hpp"

namespace mds {

// Fixed-depth trie over the label alphabet. Nodes of one level are contiguous; a node stores the
// set of present labels and the index of its first child on the next level.
class FactorTrie {
 public:
  FactorTrie() = default;
  static FactorTrie from_sorted(const std::vector<std::string>& keys, int depth);

  bool lookup(const std::uint8_t* labels) const;
  bool lookup(const std::string& key) const;
  int depth() const { return depth_; }
  std::size_t paths() const { return paths_; }
  std::size_t bytes() const { return mask_.size() * (sizeof(std::uint8_t) + sizeof(std::uint32_t)); }
  std::vector<std::string> keys() const;

 private:
  int depth_ = 0;
  std::size_t paths_ = 0;
  std::vector<std::uint8_t> mask_;
  std::vector<std::uint32_t> first_;
};

void trie_insert(FactorTrie& t, const std::string& key);
bool trie_lookup(const FactorTrie& t, const std::string& key);

struct FactorOptions {
  bool keep_tables = false;  // keep the sorted key list of every node
  bool all_tries = false;    // build a trie for every node, not only B nodes
  std::size_t max_entries = 0;  // 0 = unlimited; otherwise CapError beyond this total
};

struct Factors {
  std::vector<std::vector<int>> bag_order;  // per node: bag names sorted by rank
  std::vector<FactorTrie> tries;            // per node; empty unless built
  std::vector<std::vector<std::string>> tables;
  std::size_t total_entries = 0;
  std::size_t trie_bytes = 0;
  bool root_nonempty = false;
};

Factors dp_compute_factors(const NiceDBTD& d, const EnumerationOrder& order, const std::vector<Domain>& dom,
                           const FactorOptions& opts = {});

// Declarative factor semantics, used as the oracle for the dynamic program. `phi` is given in
// `bag_order`, `subset` is a set of original vertices inside the node's subtree.
bool consistent_subset_semantics(const Graph& g, const NiceDBTD& d, const std::vector<Domain>& dom, int node,
                                 const std::vector<int>& bag_order, const std::string& phi,
                                 const std::vector<int>& subset);
// All labelings with a consistent subset, sorted; exhaustive over subsets of the subtree's originals.
std::vector<std::string> semantic_factor(const Graph& g, const NiceDBTD& d, const std::vector<Domain>& dom, int node,
                                         const std::vector<int>& bag_order);

// Golden dump: one line per accepted labeling, bag names given in bag order.
std::string dump_factor(const Factors& f, const NiceDBTD& d, int node, const Graph& g);

}  // namespace mds
