#pragma once

#include "hmrkit/int_matrix.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace hmrkit {

struct SignedCell {
  std::size_t cell = 0;
  int sign = 1;
};

// Cellular map on oriented cells, per degree.
using CellAction = std::vector<std::vector<SignedCell>>;

struct CellComplex {
  std::vector<std::size_t> cells;
  // boundary[k]: C_{k+1} -> C_k, entry (face, cell).
  std::vector<IntMatrix> boundary;
};

// A cell complex together with one cellular action per group generator.
struct EquivariantComplex {
  CellComplex X;
  std::vector<CellAction> actions;
};

struct CircleMap {
  long rotation = 0;
  bool reflect = false;
};

EquivariantComplex point_complex(std::size_t generators);
// Two points; generator g swaps them when swaps[g].
EquivariantComplex s0_complex(const std::vector<bool>& swaps);
// Circle with N vertices at angles 2 pi k / N; generator g acts by k -> (reflect ? -k : k) + rotation.
EquivariantComplex circle_complex(std::size_t N, const std::vector<CircleMap>& maps);
EquivariantComplex join(const EquivariantComplex& a, const EquivariantComplex& b);
EquivariantComplex product(const EquivariantComplex& a, const EquivariantComplex& b);

struct CellQuotient {
  std::vector<std::size_t> cells;
  std::vector<IntMatrix> boundary;
  // Per degree and X-cell: quotient cell and the sign with [cell] = sign * [rep].
  std::vector<std::vector<std::size_t>> rep_of;
  std::vector<std::vector<int>> sign_of;
  std::vector<std::vector<std::size_t>> representative;
};

// All group elements generated by the given actions (identity included).
std::vector<CellAction> group_closure(const CellComplex& X, const std::vector<CellAction>& gens);
CellQuotient quotient(const CellComplex& X, const std::vector<CellAction>& group);

bool boundary_squares_to_zero(const CellComplex& X);

}
