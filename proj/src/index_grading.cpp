#include "hmrkit/index_grading.hpp"

#include "hmrkit/error.hpp"

#include <numeric>
#include <string>

namespace hmrkit {

TopologicalData4 disjoint_union(const TopologicalData4& a, const TopologicalData4& b)
{
  return {a.c1_sq + b.c1_sq, a.sigma + b.sigma, a.b1_inv + b.b1_inv, a.bplus_inv + b.bplus_inv,
          a.b0_inv + b.b0_inv};
}

std::int64_t closed4_index(const TopologicalData4& d)
{
  const std::int64_t num = d.c1_sq - d.sigma;
  if (num % 8 != 0)
    fail(ErrorCode::NotDivisibleBy8, "c1^2 - sigma = " + std::to_string(num) + " is not divisible by 8");
  return num / 8 + static_cast<std::int64_t>(d.b1_inv) - static_cast<std::int64_t>(d.bplus_inv) -
         static_cast<std::int64_t>(d.b0_inv);
}

std::int64_t loop_grading_shift(std::int64_t pairing)
{
  if (pairing % 2 != 0)
    fail(ErrorCode::OddPairing, "pairing " + std::to_string(pairing) + " is odd");
  return pairing / 2;
}

GradingSetInfo j_structure(const std::vector<std::int64_t>& c1_pairings)
{
  GradingSetInfo info;
  std::uint64_t g = 0;
  for (std::int64_t p : c1_pairings) {
    std::int64_t h = loop_grading_shift(p);
    g = std::gcd(g, static_cast<std::uint64_t>(h < 0 ? -h : h));
  }
  info.free = g == 0;
  info.stabilizer_index = g;
  return info;
}

}
