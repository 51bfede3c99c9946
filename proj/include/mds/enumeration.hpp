#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

#include "mds/dbtd.hpp"
#include "mds/factors.hpp"
#include "mds/order.hpp"

namespace mds {

inline constexpr std::uint8_t kUnset = 0xFF;

struct EnumContext {
  const NiceDBTD* dbtd = nullptr;
  const EnumerationOrder* order = nullptr;
  const Factors* factors = nullptr;
  std::vector<Domain> domains;  // per name

  // Per rank.
  std::vector<std::vector<int>> earlier;      // ranks of earlier neighbours
  std::vector<std::vector<int>> bag_ranks;    // ranks of the bag of B(v_i), in bag order
  std::vector<std::vector<std::uint8_t>> labels;  // domain in F order
  std::vector<bool> copy;
  std::vector<int> top_ranks;  // ranks of top names, one per original
};

EnumContext make_context(const NiceDBTD& d, const EnumerationOrder& o, const Factors& f,
                         const std::vector<Domain>& name_dom);

struct PartialLabeling {
  int i = 0;  // labelled prefix length
  std::vector<std::uint8_t> theta;  // by rank, kUnset beyond the prefix
};

PartialLabeling empty_labeling(const EnumContext& ctx);
// Extends the labeling by v_{i+1} <- c; at most two results.
std::vector<PartialLabeling> increment_labeling(const EnumContext& ctx, const PartialLabeling& theta, std::uint8_t c);
bool is_extendable(const EnumContext& ctx, const PartialLabeling& theta);

struct DelayReport {
  std::size_t n = 0;  // augmented universe size
  int w = 0;
  std::vector<std::uint64_t> gaps;  // basic operations per gap
  std::uint64_t max_gap = 0;
  double mean_gap = 0;
  double ratio = 0;  // max_gap / (n (w + 1))
  std::uint64_t lookups = 0, increments = 0, writes = 0;
};

struct EnumOptions {
  std::uint64_t limit = 0;  // 0 = no limit
  bool stats = false;
  bool debug = false;  // dead-branch tracking and prefix admissibility checks
  int width = 0;       // reported in the delay report
  // Called for every extendability decision with the candidate prefix.
  std::function<void(const PartialLabeling&, bool)> on_check;
};

struct EnumResult {
  std::uint64_t emitted = 0;
  std::uint64_t dead_branches = 0;
  std::uint64_t inadmissible_prefixes = 0;
  bool stopped = false;
  DelayReport delay;
};

using Emit = std::function<bool(const std::vector<int>&)>;  // return false to stop

EnumResult enum_ds(const EnumContext& ctx, const Emit& emit, const EnumOptions& opts = {});

// Recomputes the admissibility clauses of a prefix from scratch; true if all hold.
bool prefix_admissible(const EnumContext& ctx, const PartialLabeling& theta);

std::string format_delay(const DelayReport& r);

// Brute-force extendability: a prefix is extendable iff some minimal dominating set of `g` induces
// exactly that prefix. All minimal dominating sets are enumerated up front (n <= 24).
class BruteExtendable {
 public:
  BruteExtendable(const Graph& g, const EnumContext& ctx);
  bool operator()(const PartialLabeling& theta) const;
  std::size_t solutions() const { return solutions_; }
  // The full labeling by rank that a subset induces, if it is a solution within the domains.
  const std::vector<std::string>& labelings() const { return full_; }

 private:
  std::unordered_set<std::string> prefixes_;
  std::vector<std::string> full_;
  std::size_t solutions_ = 0;
};

}  // namespace mds
