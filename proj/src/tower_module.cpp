#include "hmrkit/tower_module.hpp"

#include "hmrkit/error.hpp"

#include <algorithm>

namespace hmrkit {

const char* tower_type_name(TowerType t)
{
  switch (t) {
  case TowerType::Down: return "down";
  case TowerType::Up: return "up";
  case TowerType::Full: return "full";
  }
  return "?";
}

TowerType tower_type_from_name(const std::string& s)
{
  if (s == "down")
    return TowerType::Down;
  if (s == "up")
    return TowerType::Up;
  if (s == "full")
    return TowerType::Full;
  fail(ErrorCode::InvalidArgument, "unknown tower type " + s);
}

bool Tower::occupies(std::int64_t g) const
{
  switch (type) {
  case TowerType::Down: return g <= anchor;
  case TowerType::Up: return g > anchor;
  default: return true;
  }
}

void TowerModule::add_finite(std::int64_t g, std::size_t mult)
{
  if (mult > 0)
    finite[g] += mult;
}

void TowerModule::add_tower(TowerType t, std::int64_t anchor)
{
  towers.push_back({t, anchor});
  std::sort(towers.begin(), towers.end());
}

std::size_t TowerModule::finite_rank() const
{
  std::size_t n = 0;
  for (const auto& [g, k] : finite)
    n += k;
  return n;
}

std::size_t TowerModule::rank_at(std::int64_t g) const
{
  std::size_t n = finite.count(g) ? finite.at(g) : 0;
  for (const auto& t : towers)
    if (t.occupies(g))
      ++n;
  return n;
}

GradedRanks TowerModule::ranks(std::int64_t g_min, std::int64_t g_max) const
{
  GradedRanks out;
  for (std::int64_t g = g_min; g <= g_max; ++g)
    if (std::size_t r = rank_at(g))
      out[g] = r;
  return out;
}

bool operator==(const TowerModule& a, const TowerModule& b)
{
  auto ta = a.towers, tb = b.towers;
  std::sort(ta.begin(), ta.end());
  std::sort(tb.begin(), tb.end());
  return a.finite == b.finite && ta == tb && a.undetermined == b.undetermined;
}

const TowerModule& TowerTriple::get(Flavor f) const
{
  switch (f) {
  case Flavor::Hat: return hat;
  case Flavor::Check: return check;
  default: return bar;
  }
}

TowerModule apply_upsilon(const TowerModule& m)
{
  TowerModule out;
  out.undetermined = m.undetermined;
  for (const auto& t : m.towers)
    out.add_tower(t.type, t.type == TowerType::Up ? t.anchor : t.anchor - 1);
  return out;
}

TowerModule apply_upsilon_power(const TowerModule& m, std::size_t k)
{
  TowerModule out = m;
  for (std::size_t i = 0; i < k; ++i)
    out = apply_upsilon(out);
  return out;
}

}
