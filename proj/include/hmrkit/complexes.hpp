#pragma once

#include "hmrkit/f2_matrix.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hmrkit {

enum class Kind { Interior, Stable, Unstable };

char kind_letter(Kind k);
Kind kind_from_letter(char c);

struct Generator {
  std::string id;
  Kind kind = Kind::Interior;
  std::int64_t gr = 0;

  std::int64_t bar_gr() const { return kind == Kind::Unstable ? gr - 1 : gr; }
};

// Matrices act on column vectors: entry (target, source).
struct BlockDifferentials {
  std::vector<Generator> interior;
  std::vector<Generator> stable;
  std::vector<Generator> unstable;
  F2Matrix oo;     // C^o -> C^o
  F2Matrix os;     // C^o -> C^s
  F2Matrix uo;     // C^u -> C^o
  F2Matrix us;     // C^u -> C^s
  F2Matrix bar_ss; // C^s -> C^s
  F2Matrix bar_us; // C^u -> C^s
  F2Matrix bar_su; // C^s -> C^u
  F2Matrix bar_uu; // C^u -> C^u

  // Zero blocks of the right shapes for the current generator lists.
  void reset_blocks();
};

enum class Flavor { Check, Hat, Bar };

const char* flavor_name(Flavor f);

struct GradedComplex {
  F2Matrix d;
  std::vector<std::int64_t> grades;
  std::vector<std::string> ids;
};

struct ThreeComplexes {
  GradedComplex check; // C^o + C^s, graded by gr
  GradedComplex hat;   // C^o + C^u, graded by gr
  GradedComplex bar;   // C^s + C^u, graded by bar_gr

  const GradedComplex& get(Flavor f) const;
};

using GradedRanks = std::map<std::int64_t, std::size_t>;

struct LesMaps {
  F2Matrix i; // bar -> check
  F2Matrix j; // check -> hat
  F2Matrix p; // hat -> bar
};

ThreeComplexes assemble(const BlockDifferentials& blocks);
bool verify_d_squared(const ThreeComplexes& c);
GradedRanks homology(const ThreeComplexes& c, Flavor flavor);
GradedRanks homology(const GradedComplex& c);
LesMaps les_maps(const BlockDifferentials& blocks);
bool chain_map_identities_hold(const ThreeComplexes& c, const LesMaps& maps);

struct LesReport {
  bool exact = true;
  std::int64_t g_min = 0;
  std::int64_t g_max = 0;
  // Gradings where exactness failed, tagged by the spot ("check", "hat", "bar").
  std::vector<std::pair<std::int64_t, std::string>> failures;
};

// Exactness of ... -> H_j(bar) -> H_j(check) -> H_j(hat) -> H_{j-1}(bar) -> ... away from the window edges.
// Without an explicit window the range of gradings present is used.
LesReport les_exactness(const ThreeComplexes& c, const LesMaps& maps,
                        std::optional<std::pair<std::int64_t, std::int64_t>> window = std::nullopt);
bool verify_les_exact(const ThreeComplexes& c, const LesMaps& maps);

std::size_t total_rank(const GradedRanks& r);

}
