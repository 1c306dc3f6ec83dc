#include "hmrkit/f2_matrix.hpp"

#include "hmrkit/error.hpp"

#include <algorithm>
#include <string>

namespace hmrkit {

namespace {

// Bit-packed rows for elimination. Matrices with at most 64 columns use a single word per row.
class PackedRows {
public:
  PackedRows(const F2Matrix& m) : words_((m.cols() + 63) / 64), bits_(m.rows() * words_, 0)
  {
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c : m.row(r))
        bits_[r * words_ + c / 64] |= std::uint64_t(1) << (c % 64);
    rows_ = m.rows();
  }

  bool test(std::size_t r, std::size_t c) const { return (bits_[r * words_ + c / 64] >> (c % 64)) & 1u; }

  void swap_rows(std::size_t a, std::size_t b)
  {
    if (a == b)
      return;
    std::swap_ranges(bits_.begin() + a * words_, bits_.begin() + (a + 1) * words_, bits_.begin() + b * words_);
  }

  void add_row(std::size_t dst, std::size_t src)
  {
    for (std::size_t w = 0; w < words_; ++w)
      bits_[dst * words_ + w] ^= bits_[src * words_ + w];
  }

  std::size_t rows() const { return rows_; }

private:
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
  std::size_t rows_ = 0;
};

// Reduced row echelon form; returns pivot columns in order.
std::vector<std::size_t> rref(PackedRows& p, std::size_t cols)
{
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < p.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < p.rows() && !p.test(piv, c))
      ++piv;
    if (piv == p.rows())
      continue;
    p.swap_rows(rank, piv);
    for (std::size_t r = 0; r < p.rows(); ++r)
      if (r != rank && p.test(r, c))
        p.add_row(r, rank);
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

void check_index(std::size_t r, std::size_t c, std::size_t rows, std::size_t cols)
{
  if (r >= rows || c >= cols)
    fail(ErrorCode::ShapeMismatch, "F2 position (" + std::to_string(r) + "," + std::to_string(c) +
                                       ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
}

F2Vector symmetric_difference(const F2Vector& a, const F2Vector& b)
{
  F2Vector out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}

F2Matrix::F2Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

F2Matrix F2Matrix::identity(std::size_t n)
{
  F2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m.data_[i].push_back(i);
  return m;
}

F2Matrix F2Matrix::from_positions(std::size_t rows, std::size_t cols,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& ones)
{
  F2Matrix m(rows, cols);
  for (auto [r, c] : ones) {
    check_index(r, c, rows, cols);
    auto& row = m.data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c);
    if (it != row.end() && *it == c)
      fail(ErrorCode::InvalidArgument, "duplicate F2 position (" + std::to_string(r) + "," + std::to_string(c) + ")");
    row.insert(it, c);
  }
  return m;
}

F2Matrix F2Matrix::from_columns(std::size_t rows, const std::vector<F2Vector>& columns)
{
  F2Matrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t r : columns[c]) {
      check_index(r, c, rows, columns.size());
      m.data_[r].push_back(c);
    }
  return m;
}

F2Matrix F2Matrix::block(const std::vector<std::vector<F2Matrix>>& blocks)
{
  if (blocks.empty())
    return F2Matrix();
  std::size_t total_rows = 0, total_cols = 0;
  for (const auto& b : blocks.front())
    total_cols += b.cols();
  for (const auto& brow : blocks) {
    if (brow.size() != blocks.front().size())
      fail(ErrorCode::ShapeMismatch, "ragged block layout");
    for (std::size_t j = 0; j < brow.size(); ++j)
      if (brow[j].rows() != brow.front().rows() || brow[j].cols() != blocks.front()[j].cols())
        fail(ErrorCode::ShapeMismatch, "block sizes do not line up");
    total_rows += brow.front().rows();
  }
  F2Matrix m(total_rows, total_cols);
  std::size_t r0 = 0;
  for (const auto& brow : blocks) {
    std::size_t c0 = 0;
    for (const auto& b : brow) {
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c : b.data_[r])
          m.data_[r0 + r].push_back(c0 + c);
      c0 += b.cols();
    }
    r0 += brow.front().rows();
  }
  return m;
}

std::size_t F2Matrix::nnz() const
{
  std::size_t n = 0;
  for (const auto& r : data_)
    n += r.size();
  return n;
}

bool F2Matrix::get(std::size_t r, std::size_t c) const
{
  check_index(r, c, rows_, cols_);
  return std::binary_search(data_[r].begin(), data_[r].end(), c);
}

void F2Matrix::set(std::size_t r, std::size_t c, bool value)
{
  if (get(r, c) != value)
    flip(r, c);
}

void F2Matrix::flip(std::size_t r, std::size_t c)
{
  check_index(r, c, rows_, cols_);
  auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c);
  if (it != row.end() && *it == c)
    row.erase(it);
  else
    row.insert(it, c);
}

std::vector<std::pair<std::size_t, std::size_t>> F2Matrix::positions() const
{
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c : data_[r])
      out.emplace_back(r, c);
  return out;
}

F2Matrix F2Matrix::transpose() const
{
  F2Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c : data_[r])
      t.data_[c].push_back(r);
  return t;
}

F2Matrix F2Matrix::select(const std::vector<std::size_t>& row_idx, const std::vector<std::size_t>& col_idx) const
{
  std::vector<std::ptrdiff_t> col_map(cols_, -1);
  for (std::size_t j = 0; j < col_idx.size(); ++j) {
    check_index(0, col_idx[j], 1, cols_);
    col_map[col_idx[j]] = static_cast<std::ptrdiff_t>(j);
  }
  F2Matrix m(row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i) {
    check_index(row_idx[i], 0, rows_, 1);
    for (std::size_t c : data_[row_idx[i]])
      if (col_map[c] >= 0)
        m.data_[i].push_back(static_cast<std::size_t>(col_map[c]));
    std::sort(m.data_[i].begin(), m.data_[i].end());
  }
  return m;
}

F2Matrix F2Matrix::select_cols(const std::vector<std::size_t>& col_idx) const
{
  std::vector<std::size_t> all(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    all[i] = i;
  return select(all, col_idx);
}

F2Vector F2Matrix::column(std::size_t c) const
{
  F2Vector v;
  for (std::size_t r = 0; r < rows_; ++r)
    if (std::binary_search(data_[r].begin(), data_[r].end(), c))
      v.push_back(r);
  return v;
}

F2Vector F2Matrix::apply(const F2Vector& v) const
{
  F2Vector out;
  for (std::size_t r = 0; r < rows_; ++r) {
    std::size_t parity = 0;
    auto a = data_[r].begin();
    auto b = v.begin();
    while (a != data_[r].end() && b != v.end()) {
      if (*a < *b)
        ++a;
      else if (*b < *a)
        ++b;
      else {
        ++parity;
        ++a;
        ++b;
      }
    }
    if (parity & 1u)
      out.push_back(r);
  }
  return out;
}

F2Matrix operator+(const F2Matrix& a, const F2Matrix& b)
{
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    fail(ErrorCode::ShapeMismatch, "F2 sum of " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) + " and " +
                                       std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  F2Matrix m(a.rows_, a.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    m.data_[r] = symmetric_difference(a.data_[r], b.data_[r]);
  return m;
}

F2Matrix operator*(const F2Matrix& a, const F2Matrix& b)
{
  if (a.cols_ != b.rows_)
    fail(ErrorCode::ShapeMismatch, "F2 product of " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                                       " and " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  F2Matrix m(a.rows_, b.cols_);
  std::vector<std::uint8_t> acc(b.cols_, 0), seen(b.cols_, 0);
  std::vector<std::size_t> touched;
  for (std::size_t r = 0; r < a.rows_; ++r) {
    touched.clear();
    for (std::size_t k : a.data_[r])
      for (std::size_t c : b.data_[k]) {
        if (!seen[c]) {
          seen[c] = 1;
          touched.push_back(c);
        }
        acc[c] ^= 1u;
      }
    for (std::size_t c : touched) {
      if (acc[c])
        m.data_[r].push_back(c);
      acc[c] = 0;
      seen[c] = 0;
    }
    std::sort(m.data_[r].begin(), m.data_[r].end());
  }
  return m;
}

bool operator==(const F2Matrix& a, const F2Matrix& b)
{
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::size_t f2_rank(const F2Matrix& m)
{
  if (m.rows() == 0 || m.cols() == 0)
    return 0;
  PackedRows p(m);
  return rref(p, m.cols()).size();
}

std::vector<F2Vector> f2_kernel_basis(const F2Matrix& m)
{
  PackedRows p(m);
  std::vector<std::size_t> pivots = rref(p, m.cols());
  std::vector<std::ptrdiff_t> pivot_row(m.cols(), -1);
  for (std::size_t i = 0; i < pivots.size(); ++i)
    pivot_row[pivots[i]] = static_cast<std::ptrdiff_t>(i);
  std::vector<F2Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (pivot_row[free] >= 0)
      continue;
    F2Vector v;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      if (p.test(i, free))
        v.push_back(pivots[i]);
    v.push_back(free);
    std::sort(v.begin(), v.end());
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t f2_homology_rank(const F2Matrix& d_in, const F2Matrix& d_out)
{
  if (!(d_out * d_in).is_zero())
    fail(ErrorCode::CompositionNonzero, "d_out * d_in is nonzero");
  return d_out.cols() - f2_rank(d_out) - f2_rank(d_in);
}

}
