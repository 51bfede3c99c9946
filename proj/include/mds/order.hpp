#pragma once

#include <vector>

#include "mds/dbtd.hpp"

namespace mds {

struct EnumerationOrder {
  std::vector<int> P;     // nodes in depth-first order, left child first
  std::vector<int> B;     // name -> first node in P whose bag holds it
  std::vector<int> Q;     // rank -> name
  std::vector<int> rank;  // name -> rank
};

EnumerationOrder compute_order(const NiceDBTD& d);
ValidationReport validate_order(const NiceDBTD& d, const EnumerationOrder& order);

}  // namespace mds
