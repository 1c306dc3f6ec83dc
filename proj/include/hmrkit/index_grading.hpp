#pragma once

#include <cstdint>
#include <vector>

namespace hmrkit {

struct TopologicalData4 {
  std::int64_t c1_sq = 0;
  std::int64_t sigma = 0;
  std::uint64_t b1_inv = 0;
  std::uint64_t bplus_inv = 0;
  std::uint64_t b0_inv = 0;
};

TopologicalData4 disjoint_union(const TopologicalData4& a, const TopologicalData4& b);

// (c1_sq - sigma)/8 + b1 - b+ - b0
std::int64_t closed4_index(const TopologicalData4& d);

std::int64_t loop_grading_shift(std::int64_t pairing);

struct GradingSetInfo {
  bool free = true;
  std::uint64_t stabilizer_index = 0;
};

GradingSetInfo j_structure(const std::vector<std::int64_t>& c1_pairings);

}
