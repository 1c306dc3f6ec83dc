#include "doctest.h"
#include "oracles.hpp"

#include "hmrkit/int_matrix.hpp"

using namespace hmrkit;

namespace {

std::vector<std::vector<Integer>> rows_of(const IntMatrix& m)
{
  std::vector<std::vector<Integer>> r(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r[i][j] = m(i, j);
  return r;
}

Integer det(const IntMatrix& m) { return oracle::bareiss_det(rows_of(m)); }

IntMatrix random_int(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi)
{
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = d(rng);
  return m;
}

// Product of elementary row operations.
IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n)
{
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2)
    return u;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> f(-2, 2);
  for (int k = 0; k < 12; ++k) {
    std::size_t a = idx(rng), b = idx(rng);
    if (a == b)
      continue;
    const int s = f(rng);
    for (std::size_t j = 0; j < n; ++j)
      u(a, j) += s * u(b, j);
  }
  return u;
}

void check_snf(const IntMatrix& a)
{
  SNFResult s = smith_normal_form(a);
  CHECK(s.U * a * s.V == s.D);
  CHECK(abs(det(s.U)) == 1);
  CHECK(abs(det(s.V)) == 1);
  CHECK(s.U * s.U_inv == IntMatrix::identity(a.rows()));
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j)
        CHECK(s.D(i, j) == 0);
  const std::size_t k = std::min(a.rows(), a.cols());
  for (std::size_t i = 0; i + 1 < k; ++i) {
    CHECK(s.D(i, i) >= 0);
    if (s.D(i + 1, i + 1) != 0)
      CHECK(s.D(i + 1, i + 1) % s.D(i, i) == 0);
    else
      CHECK(true);
  }
  CHECK(s.rank == rational_rank(a));
}

}

TEST_CASE("smith normal form of small examples")
{
  SNFResult a = smith_normal_form(IntMatrix::from_rows({{2, 0}, {0, 3}}));
  CHECK(a.D == IntMatrix::from_rows({{1, 0}, {0, 6}}));
  SNFResult b = smith_normal_form(IntMatrix::from_rows({{2, 4}, {6, 8}}));
  CHECK(b.D == IntMatrix::from_rows({{2, 0}, {0, 4}}));
  CHECK(smith_normal_form(IntMatrix::identity(4)).D == IntMatrix::identity(4));
  check_snf(IntMatrix::from_rows({{2, 0}, {0, 3}}));
  check_snf(IntMatrix::from_rows({{2, 4}, {6, 8}}));
  check_snf(IntMatrix(0, 3));
  check_snf(IntMatrix(2, 0));
}

TEST_CASE("smith normal form on random matrices")
{
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t r = 1 + trial % 6, c = 1 + (trial / 6) % 6;
    check_snf(random_int(rng, r, c, -9, 9));
  }
}

TEST_CASE("determinant of square matrices matches the product of the diagonal")
{
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 5;
    IntMatrix a = random_int(rng, n, n, -5, 5);
    CHECK(abs_determinant(a) == abs(det(a)));
  }
}

TEST_CASE("cokernel invariants")
{
  CHECK(cokernel_invariants(IntMatrix(1, 1)) == std::vector<Integer>{0});
  CHECK(cokernel_invariants(IntMatrix::from_rows({{7}})) == std::vector<Integer>{7});
  CHECK(cokernel_invariants(IntMatrix::from_rows({{2, 0}, {0, 4}})) == std::vector<Integer>{2, 4});
  CHECK(cokernel_invariants(IntMatrix::identity(3)).empty());
  CHECK(cokernel_invariants(IntMatrix(2, 0)) == std::vector<Integer>{0, 0});
}

TEST_CASE("cokernel invariants are unchanged by unimodular change of basis")
{
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + trial % 5, c = 1 + (trial / 5) % 5;
    IntMatrix a = random_int(rng, r, c, -6, 6);
    IntMatrix b = random_unimodular(rng, r) * a * random_unimodular(rng, c);
    CHECK(cokernel_invariants(a) == cokernel_invariants(b));
  }
}

TEST_CASE("cokernel order against ranks modulo primes")
{
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 5;
    IntMatrix a = random_int(rng, r, c, -8, 8);
    auto inv = cokernel_invariants(a);
    for (long p : {2L, 3L, 5L, 7L}) {
      std::size_t divisible = 0;
      for (const auto& d : inv)
        if (d % p == 0)
          ++divisible;
      // dim (Z^r / Im a) tensor F_p
      CHECK(divisible == r - oracle::rank_mod(a, p));
    }
  }
}

TEST_CASE("integer kernel basis and lattice solver")
{
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix a = random_int(rng, 1 + trial % 3, 4 + trial % 3, -4, 4);
    IntMatrix k = integer_kernel_basis(a);
    CHECK(k.cols() == a.cols() - rational_rank(a));
    CHECK((a * k).is_zero());
    if (k.cols() == 0)
      continue;
    // every integer combination of the basis is recovered exactly
    IntVector coeffs(k.cols());
    for (std::size_t j = 0; j < k.cols(); ++j)
      coeffs[j] = static_cast<int>(j) - 1;
    IntVector v = k.apply(coeffs);
    LatticeSolver solver(k);
    auto x = solver.solve(v);
    REQUIRE(x);
    CHECK(*x == coeffs);
  }
  LatticeSolver even(IntMatrix::from_rows({{2}}));
  CHECK_FALSE(even.solve({Integer(3)}));
  CHECK(*even.solve({Integer(-4)}) == IntVector{-2});
}

TEST_CASE("large entries stay exact")
{
  IntMatrix a = IntMatrix::from_rows({{1000000007, 0}, {0, 998244353}});
  a = a * a * a;
  auto inv = cokernel_invariants(a);
  REQUIRE(inv.size() == 1);
  Integer expect = Integer(1000000007) * 998244353;
  CHECK(inv[0] == expect * expect * expect);
}
