#pragma once

#include "hmrkit/complexes.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hmrkit {

enum class TowerType { Down, Up, Full };

const char* tower_type_name(TowerType t);
TowerType tower_type_from_name(const std::string& s);

// down: anchor, anchor-1, ...; up: anchor+1, anchor+2, ...; full: every grading.
struct Tower {
  TowerType type = TowerType::Down;
  std::int64_t anchor = 0;

  bool occupies(std::int64_t g) const;
  friend bool operator==(const Tower&, const Tower&) = default;
  friend auto operator<=>(const Tower&, const Tower&) = default;
};

struct TowerModule {
  std::map<std::int64_t, std::size_t> finite;
  std::vector<Tower> towers;
  bool undetermined = false;

  void add_finite(std::int64_t g, std::size_t mult);
  void add_tower(TowerType t, std::int64_t anchor);
  std::size_t finite_rank() const;
  std::size_t rank_at(std::int64_t g) const;
  GradedRanks ranks(std::int64_t g_min, std::int64_t g_max) const;
  bool is_zero() const { return finite.empty() && towers.empty(); }

  friend bool operator==(const TowerModule& a, const TowerModule& b);
};

struct TowerTriple {
  TowerModule hat;
  TowerModule check;
  TowerModule bar;

  const TowerModule& get(Flavor f) const;
};

// Image module upsilon * M: finite summands die, down and full towers move their anchor down by one,
// an up-tower is mapped onto itself.
TowerModule apply_upsilon(const TowerModule& m);
TowerModule apply_upsilon_power(const TowerModule& m, std::size_t k);

}
