#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace hmrkit {

// Sorted list of the positions holding 1.
using F2Vector = std::vector<std::size_t>;

// Sparse matrix over F2. Each row keeps a sorted list of its nonzero columns.
class F2Matrix {
public:
  F2Matrix() = default;
  F2Matrix(std::size_t rows, std::size_t cols);

  static F2Matrix identity(std::size_t n);
  static F2Matrix from_positions(std::size_t rows, std::size_t cols,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& ones);
  static F2Matrix from_columns(std::size_t rows, const std::vector<F2Vector>& columns);
  // Row i of the result is the concatenation of blocks[i][*]; block heights and widths must line up.
  static F2Matrix block(const std::vector<std::vector<F2Matrix>>& blocks);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;
  bool is_zero() const { return nnz() == 0; }

  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool value);
  void flip(std::size_t r, std::size_t c);
  const F2Vector& row(std::size_t r) const { return data_[r]; }

  std::vector<std::pair<std::size_t, std::size_t>> positions() const;
  F2Matrix transpose() const;
  F2Matrix select(const std::vector<std::size_t>& row_idx, const std::vector<std::size_t>& col_idx) const;
  F2Matrix select_cols(const std::vector<std::size_t>& col_idx) const;
  F2Vector column(std::size_t c) const;
  F2Vector apply(const F2Vector& v) const;

  friend F2Matrix operator+(const F2Matrix& a, const F2Matrix& b);
  friend F2Matrix operator*(const F2Matrix& a, const F2Matrix& b);
  friend bool operator==(const F2Matrix& a, const F2Matrix& b);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F2Vector> data_;
};

std::size_t f2_rank(const F2Matrix& m);
std::vector<F2Vector> f2_kernel_basis(const F2Matrix& m);
// dim ker(d_out) - rank(d_in); throws CompositionNonzero unless d_out * d_in = 0.
std::size_t f2_homology_rank(const F2Matrix& d_in, const F2Matrix& d_out);

}
