#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <vector>

namespace hmrkit {

using Integer = boost::multiprecision::cpp_int;
using IntVector = std::vector<Integer>;

class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector column(std::size_t c) const;
  IntMatrix transpose() const;
  IntMatrix select_cols(const std::vector<std::size_t>& idx) const;
  // Horizontal concatenation; row counts must agree.
  IntMatrix hcat(const IntMatrix& other) const;
  bool is_zero() const;
  IntVector apply(const IntVector& v) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

struct SNFResult {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix U_inv;
  std::size_t rank = 0;
  int det_sign_U = 1;
  int det_sign_V = 1;
};

// U*A*V = D with d_i >= 0, d_i | d_{i+1}. Pivot: smallest nonzero |entry|, then lowest (row, col).
SNFResult smith_normal_form(const IntMatrix& a);

// Invariant factors of Z^rows / Im(a): entries > 1 for torsion, 0 for each free summand.
std::vector<Integer> cokernel_invariants(const IntMatrix& a);

std::size_t rational_rank(const IntMatrix& a);
Integer abs_determinant(const IntMatrix& a);

// Columns form a basis of the integer null space.
IntMatrix integer_kernel_basis(const IntMatrix& a);

// Basis (full column rank) of the lattice spanned by the columns of g.
IntMatrix lattice_basis(const IntMatrix& g);

// Solves B x = v over the integers for a full-column-rank B.
class LatticeSolver {
public:
  explicit LatticeSolver(const IntMatrix& basis);
  std::optional<IntVector> solve(const IntVector& v) const;
  IntVector solve_or_throw(const IntVector& v) const;
  std::size_t dimension() const { return basis_.cols(); }

private:
  IntMatrix basis_;
  SNFResult snf_;
};

}
