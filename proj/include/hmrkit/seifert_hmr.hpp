#pragma once

#include "hmrkit/complexes.hpp"
#include "hmrkit/tower_module.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace hmrkit {

TowerTriple psc_hmr(std::uint64_t b1_inv, bool torsion);
std::vector<TowerTriple> lens_hmr(std::int64_t p, std::int64_t q);

enum class BrieskornFamily { Plus6, Minus6, Minus10, Plus10, Sporadic29 };

const char* family_name(BrieskornFamily f);
// "2,3,+1", "2,3,-1", "2,5,-1", "2,5,+1", "2,7,29", or a concrete member such as "2,3,13" (sets k).
BrieskornFamily parse_family(const std::string& s, std::optional<std::int64_t>* k_from_triple = nullptr);
std::tuple<std::int64_t, std::int64_t, std::int64_t> brieskorn_triple(BrieskornFamily f, std::int64_t k);

struct BrieskornInput {
  BrieskornFamily family = BrieskornFamily::Plus6;
  std::int64_t k = 1;
  std::optional<std::pair<std::int64_t, std::int64_t>> window;
};

struct IrreducibleSpectrum {
  BrieskornFamily family = BrieskornFamily::Plus6;
  std::int64_t k = 1;
  std::map<std::int64_t, std::size_t> irreducibles;
  std::int64_t theta_minus1 = 0;
  bool hat_undetermined = false;
  // Index-one pairs among irreducibles with their raw trajectory counts.
  std::vector<std::tuple<std::int64_t, std::int64_t, std::size_t>> index_one_counts;

  std::size_t irreducible_count() const;
};

IrreducibleSpectrum brieskorn_irreducibles(const BrieskornInput& input);

struct DivisorCalibration {
  std::int64_t congruence_modulus = 1;
  std::int64_t congruence_residue = 0;
  std::int64_t window_margin = 0;
};

DivisorCalibration load_divisor_calibration(const std::string& fixture_dir);

// Effective orbifold divisors e + b1/p + b2/q + b3/r (e >= 0, 0 <= b_i < a_i) with 0 <= deg < deg(K)/2.
std::size_t divisor_count(std::int64_t p, std::int64_t q, std::int64_t r, const DivisorCalibration& cal,
                          std::int64_t degree_resolution = 0);

std::pair<std::int64_t, std::int64_t> default_window(const IrreducibleSpectrum& spectrum);

struct BrieskornResult {
  IrreducibleSpectrum spectrum;
  std::pair<std::int64_t, std::int64_t> window;
  TowerTriple modules;
  BlockDifferentials blocks;
  ThreeComplexes complexes;
  bool d_squared = false;
  LesReport les;
  // Flavors whose truncated homology agrees with the symbolic module inside the window.
  std::map<std::string, bool> explicit_matches;
};

BrieskornResult assemble_brieskorn_hmr(const IrreducibleSpectrum& spectrum,
                                       std::optional<std::pair<std::int64_t, std::int64_t>> window = std::nullopt);

// Throws AmbiguousDifferential when the requested flavor is undetermined.
const TowerModule& require_determined(const BrieskornResult& r, Flavor f);

}
