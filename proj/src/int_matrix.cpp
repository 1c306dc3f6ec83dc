#include "hmrkit/int_matrix.hpp"

#include "hmrkit/error.hpp"

#include <string>
#include <utility>

namespace hmrkit {

namespace {

void require_same_shape(const IntMatrix& a, const IntMatrix& b, const char* op)
{
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorCode::ShapeMismatch, std::string("integer ") + op + " of mismatched shapes");
}

class SnfWorker {
public:
  explicit SnfWorker(const IntMatrix& a)
  {
    r_.D = a;
    r_.U = IntMatrix::identity(a.rows());
    r_.U_inv = IntMatrix::identity(a.rows());
    r_.V = IntMatrix::identity(a.cols());
  }

  SNFResult run()
  {
    IntMatrix& D = r_.D;
    const std::size_t m = D.rows(), n = D.cols();
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
      auto piv = smallest(t, m, t, n);
      if (!piv)
        break;
      move_to(t, piv->first, piv->second);
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i)
          if (D(i, t) != 0) {
            Integer q = D(i, t) / D(t, t);
            row_axpy(i, t, -q);
            if (D(i, t) != 0)
              clean = false;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(t, j) != 0) {
            Integer q = D(t, j) / D(t, t);
            col_axpy(j, t, -q);
            if (D(t, j) != 0)
              clean = false;
          }
        if (!clean) {
          // Remainders are strictly smaller than the pivot; bring the smallest back.
          auto p1 = smallest(t, m, t, t + 1);
          auto p2 = smallest(t, t + 1, t, n);
          auto best = p1;
          if (!best || (p2 && abs_at(*p2) < abs_at(*best)))
            best = p2;
          move_to(t, best->first, best->second);
          continue;
        }
        bool divides = true;
        for (std::size_t i = t + 1; i < m && divides; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (D(i, j) % D(t, t) != 0) {
              row_axpy(t, i, 1);
              divides = false;
              break;
            }
        if (divides)
          break;
      }
      if (D(t, t) < 0)
        row_negate(t);
    }
    r_.rank = t;
    return std::move(r_);
  }

private:
  Integer abs_at(std::pair<std::size_t, std::size_t> p) const { return abs(r_.D(p.first, p.second)); }

  std::optional<std::pair<std::size_t, std::size_t>> smallest(std::size_t r0, std::size_t r1,
                                                               std::size_t c0, std::size_t c1) const
  {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = c0; j < c1; ++j) {
        const Integer& x = r_.D(i, j);
        if (x == 0)
          continue;
        Integer ax = abs(x);
        if (!best || ax < best_abs) {
          best = {i, j};
          best_abs = ax;
        }
      }
    return best;
  }

  void move_to(std::size_t t, std::size_t i, std::size_t j)
  {
    row_swap(t, i);
    col_swap(t, j);
  }

  void row_swap(std::size_t a, std::size_t b)
  {
    if (a == b)
      return;
    for (std::size_t c = 0; c < r_.D.cols(); ++c)
      std::swap(r_.D(a, c), r_.D(b, c));
    for (std::size_t c = 0; c < r_.U.cols(); ++c)
      std::swap(r_.U(a, c), r_.U(b, c));
    for (std::size_t r = 0; r < r_.U_inv.rows(); ++r)
      std::swap(r_.U_inv(r, a), r_.U_inv(r, b));
    r_.det_sign_U = -r_.det_sign_U;
  }

  void col_swap(std::size_t a, std::size_t b)
  {
    if (a == b)
      return;
    for (std::size_t r = 0; r < r_.D.rows(); ++r)
      std::swap(r_.D(r, a), r_.D(r, b));
    for (std::size_t r = 0; r < r_.V.rows(); ++r)
      std::swap(r_.V(r, a), r_.V(r, b));
    r_.det_sign_V = -r_.det_sign_V;
  }

  // row dst += q * row src
  void row_axpy(std::size_t dst, std::size_t src, const Integer& q)
  {
    for (std::size_t c = 0; c < r_.D.cols(); ++c)
      if (r_.D(src, c) != 0)
        r_.D(dst, c) += q * r_.D(src, c);
    for (std::size_t c = 0; c < r_.U.cols(); ++c)
      if (r_.U(src, c) != 0)
        r_.U(dst, c) += q * r_.U(src, c);
    for (std::size_t r = 0; r < r_.U_inv.rows(); ++r)
      if (r_.U_inv(r, dst) != 0)
        r_.U_inv(r, src) -= q * r_.U_inv(r, dst);
  }

  // col dst += q * col src
  void col_axpy(std::size_t dst, std::size_t src, const Integer& q)
  {
    for (std::size_t r = 0; r < r_.D.rows(); ++r)
      if (r_.D(r, src) != 0)
        r_.D(r, dst) += q * r_.D(r, src);
    for (std::size_t r = 0; r < r_.V.rows(); ++r)
      if (r_.V(r, src) != 0)
        r_.V(r, dst) += q * r_.V(r, src);
  }

  void row_negate(std::size_t t)
  {
    for (std::size_t c = 0; c < r_.D.cols(); ++c)
      r_.D(t, c) = -r_.D(t, c);
    for (std::size_t c = 0; c < r_.U.cols(); ++c)
      r_.U(t, c) = -r_.U(t, c);
    for (std::size_t r = 0; r < r_.U_inv.rows(); ++r)
      r_.U_inv(r, t) = -r_.U_inv(r, t);
    r_.det_sign_U = -r_.det_sign_U;
  }

  SNFResult r_;
};

}

IntMatrix IntMatrix::identity(std::size_t n)
{
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows)
{
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      fail(ErrorCode::ShapeMismatch, "ragged integer matrix rows");
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVector>& columns)
{
  IntMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows)
      fail(ErrorCode::ShapeMismatch, "column length mismatch");
    for (std::size_t r = 0; r < rows; ++r)
      m(r, c) = columns[c][r];
  }
  return m;
}

IntVector IntMatrix::column(std::size_t c) const
{
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    v[r] = (*this)(r, c);
  return v;
}

IntMatrix IntMatrix::transpose() const
{
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t>& idx) const
{
  IntMatrix m(rows_, idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j)
    for (std::size_t r = 0; r < rows_; ++r)
      m(r, j) = (*this)(r, idx[j]);
  return m;
}

IntMatrix IntMatrix::hcat(const IntMatrix& other) const
{
  if (other.rows_ != rows_)
    fail(ErrorCode::ShapeMismatch, "hcat row mismatch");
  IntMatrix m(rows_, cols_ + other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c)
      m(r, c) = (*this)(r, c);
    for (std::size_t c = 0; c < other.cols_; ++c)
      m(r, cols_ + c) = other(r, c);
  }
  return m;
}

bool IntMatrix::is_zero() const
{
  for (const auto& x : data_)
    if (x != 0)
      return false;
  return true;
}

IntVector IntMatrix::apply(const IntVector& v) const
{
  if (v.size() != cols_)
    fail(ErrorCode::ShapeMismatch, "vector length mismatch");
  IntVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != 0 && v[c] != 0)
        out[r] += (*this)(r, c) * v[c];
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
  if (a.cols_ != b.rows_)
    fail(ErrorCode::ShapeMismatch, "integer product of mismatched shapes");
  IntMatrix m(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a(r, k);
      if (x == 0)
        continue;
      for (std::size_t c = 0; c < b.cols_; ++c)
        if (b(k, c) != 0)
          m(r, c) += x * b(k, c);
    }
  return m;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b)
{
  require_same_shape(a, b, "sum");
  IntMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i)
    m.data_[i] += b.data_[i];
  return m;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b)
{
  require_same_shape(a, b, "difference");
  IntMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i)
    m.data_[i] -= b.data_[i];
  return m;
}

bool operator==(const IntMatrix& a, const IntMatrix& b)
{
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

SNFResult smith_normal_form(const IntMatrix& a) { return SnfWorker(a).run(); }

std::vector<Integer> cokernel_invariants(const IntMatrix& a)
{
  SNFResult s = smith_normal_form(a);
  std::vector<Integer> out;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.D(i, i) != 1)
      out.push_back(s.D(i, i));
  for (std::size_t i = s.rank; i < a.rows(); ++i)
    out.push_back(0);
  return out;
}

std::size_t rational_rank(const IntMatrix& a) { return smith_normal_form(a).rank; }

Integer abs_determinant(const IntMatrix& a)
{
  if (a.rows() != a.cols())
    fail(ErrorCode::ShapeMismatch, "determinant of a non-square matrix");
  SNFResult s = smith_normal_form(a);
  if (s.rank < a.rows())
    return 0;
  Integer d = 1;
  for (std::size_t i = 0; i < s.rank; ++i)
    d *= s.D(i, i);
  return d;
}

IntMatrix integer_kernel_basis(const IntMatrix& a)
{
  SNFResult s = smith_normal_form(a);
  std::vector<std::size_t> idx;
  for (std::size_t j = s.rank; j < a.cols(); ++j)
    idx.push_back(j);
  return s.V.select_cols(idx);
}

IntMatrix lattice_basis(const IntMatrix& g)
{
  SNFResult s = smith_normal_form(g);
  IntMatrix b(g.rows(), s.rank);
  for (std::size_t j = 0; j < s.rank; ++j)
    for (std::size_t r = 0; r < g.rows(); ++r)
      b(r, j) = s.U_inv(r, j) * s.D(j, j);
  return b;
}

LatticeSolver::LatticeSolver(const IntMatrix& basis) : basis_(basis), snf_(smith_normal_form(basis))
{
  if (snf_.rank != basis.cols())
    fail(ErrorCode::InvalidArgument, "lattice basis is not of full column rank");
}

std::optional<IntVector> LatticeSolver::solve(const IntVector& v) const
{
  if (v.size() != basis_.rows())
    fail(ErrorCode::ShapeMismatch, "lattice solve length mismatch");
  IntVector uv = snf_.U.apply(v);
  IntVector y(basis_.cols());
  for (std::size_t i = 0; i < uv.size(); ++i) {
    if (i < snf_.rank) {
      if (uv[i] % snf_.D(i, i) != 0)
        return std::nullopt;
      y[i] = uv[i] / snf_.D(i, i);
    } else if (uv[i] != 0) {
      return std::nullopt;
    }
  }
  return snf_.V.apply(y);
}

IntVector LatticeSolver::solve_or_throw(const IntVector& v) const
{
  auto x = solve(v);
  if (!x)
    fail(ErrorCode::Internal, "vector outside lattice");
  return *x;
}

}
