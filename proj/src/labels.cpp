#include "mds/labels.hpp"

namespace mds {

int parse_label(std::string_view s) {
  for (int i = 0; i < kLabels; ++i)
    if (kLabelNames[i] == s) return i;
  static constexpr std::array<std::string_view, kLabels> ascii = {"0s", "1s", "sI", "0w", "1w", "0r", "1r", "2r"};
  for (int i = 0; i < kLabels; ++i)
    if (ascii[i] == s) return i;
  return -1;
}

std::vector<std::uint8_t> domain_labels(Domain d) {
  std::vector<std::uint8_t> out;
  for (int l = 0; l < kLabels; ++l)
    if (in_domain(d, static_cast<std::uint8_t>(l))) out.push_back(static_cast<std::uint8_t>(l));
  return out;
}

std::string labeling_string(const std::string& key) {
  std::string out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) out += ' ';
    out += label_name(static_cast<std::uint8_t>(key[i]));
  }
  return out;
}

bool valid_triple(std::uint8_t v, std::uint8_t a, std::uint8_t b) {
  switch (v) {
    case SI: return a == SI && b == SI;
    case S0: return a == S0 && b == S0;
    case S1: return (a == S1 && is_sigma(b) && b != SI) || (b == S1 && a == S0);
    case W0: return a == W0 && b == W0;
    case W1: return (a == W1 && b == W0) || (a == W0 && b == W1);
    case R0: return a == R0 && b == R0;
    case R1: return (a == R0 && b == R1) || (a == R1 && b == W0);
    case R2: return (a == R1 && b == R1) || (a == R2 && b == W0) || (a == W0 && b == R2);
  }
  return false;
}

}  // namespace mds
