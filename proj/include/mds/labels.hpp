#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mds {

// Label byte values; the numeric order is the fixed enumeration order of F.
enum Label : std::uint8_t { S0 = 0, S1 = 1, SI = 2, W0 = 3, W1 = 4, R0 = 5, R1 = 6, R2 = 7 };

inline constexpr int kLabels = 8;

enum class Category : std::uint8_t { Sigma, Omega, Rho };

using Domain = std::uint8_t;  // bit mask over labels

inline constexpr Domain kFull = 0xFF;
inline constexpr Domain kSigma = (1 << S0) | (1 << S1) | (1 << SI);
inline constexpr Domain kOmega = (1 << W0) | (1 << W1);
inline constexpr Domain kRho = (1 << R0) | (1 << R1) | (1 << R2);

constexpr Category category(std::uint8_t l) {
  return l <= SI ? Category::Sigma : (l <= W1 ? Category::Omega : Category::Rho);
}
constexpr bool is_sigma(std::uint8_t l) { return l <= SI; }
constexpr bool is_omega(std::uint8_t l) { return l == W0 || l == W1; }
constexpr bool is_rho(std::uint8_t l) { return l >= R0; }

// Bracketed counter; sigma_I has none and reports 0.
constexpr int counter(std::uint8_t l) {
  switch (l) {
    case S1: case W1: case R1: return 1;
    case R2: return 2;
    default: return 0;
  }
}
constexpr std::uint8_t rho(int j) { return static_cast<std::uint8_t>(R0 + j); }

inline constexpr std::array<std::string_view, kLabels> kLabelNames = {"0σ", "1σ", "σI", "0ω", "1ω", "0ρ", "1ρ", "2ρ"};

inline std::string_view label_name(std::uint8_t l) { return kLabelNames[l]; }
int parse_label(std::string_view s);  // -1 if unknown

inline int domain_size(Domain d) { return __builtin_popcount(d); }
inline bool in_domain(Domain d, std::uint8_t l) { return (d >> l) & 1; }
std::vector<std::uint8_t> domain_labels(Domain d);

std::string labeling_string(const std::string& key);  // e.g. "0σ 1ρ 1ρ"

// Valid (v, v0, v1) triples of the branch constraint at a join.
bool valid_triple(std::uint8_t v, std::uint8_t v0, std::uint8_t v1);

}  // namespace mds
