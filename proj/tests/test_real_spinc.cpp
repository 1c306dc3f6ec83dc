#include "doctest.h"
#include "oracles.hpp"

#include "hmrkit/error.hpp"
#include "hmrkit/real_spinc.hpp"

using namespace hmrkit;

namespace {

ErrorCode code_of(const std::function<void()>& f)
{
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

std::size_t count_divisible(const std::vector<Integer>& inv, long p)
{
  std::size_t n = 0;
  for (const auto& d : inv)
    if (d % p == 0)
      ++n;
  return n;
}

// dim H^n(X; F_p) from ranks of the coboundaries reduced mod p.
std::size_t mod_p_betti(const std::vector<std::size_t>& cells, const std::vector<IntMatrix>& delta, std::size_t n,
                        long p)
{
  const std::size_t out = n < delta.size() ? oracle::rank_mod(delta[n], p) : 0;
  const std::size_t in = n > 0 ? oracle::rank_mod(delta[n - 1], p) : 0;
  return cells[n] - out - in;
}

void check_universal_coefficients(const std::vector<std::size_t>& cells, const std::vector<IntMatrix>& delta)
{
  std::vector<std::vector<Integer>> inv;
  for (std::size_t n = 0; n < cells.size(); ++n)
    inv.push_back(CohomologyGroup(cells, delta, n).invariants());
  for (long p : {2L, 3L, 5L, 7L})
    for (std::size_t n = 0; n < cells.size(); ++n) {
      // H^n(F_p) = H^n(Z) (x) F_p + Tor(H^{n+1}(Z), F_p)
      std::size_t torsion_above = 0;
      if (n + 1 < cells.size())
        for (const auto& d : inv[n + 1])
          if (d != 0 && d % p == 0)
            ++torsion_above;
      CHECK(mod_p_betti(cells, delta, n, p) == count_divisible(inv[n], p) + torsion_above);
    }
}

std::vector<Integer> sorted(std::vector<Integer> v)
{
  std::sort(v.begin(), v.end());
  return v;
}

}

TEST_CASE("theta on cochains for points")
{
  CHECK(theta_on_cochains(builtin_cw_fixture("point-pair"), 0) == IntMatrix::from_rows({{1, 1}}));
  CHECK(theta_on_cochains(builtin_cw_fixture("point-fixed"), 0) == IntMatrix::from_rows({{2}}));
}

TEST_CASE("theta on the free circle sums the two preimages")
{
  EquivariantCWData d = builtin_cw_fixture("circle-rotation");
  CHECK_FALSE(has_fixed_cells(d));
  for (std::size_t n = 0; n < 2; ++n) {
    IntMatrix t = theta_on_cochains(d, n);
    for (std::size_t r = 0; r < t.rows(); ++r) {
      int nonzero = 0;
      for (std::size_t c = 0; c < t.cols(); ++c)
        if (t(r, c) != 0) {
          CHECK(abs(t(r, c)) == 1);
          ++nonzero;
        }
      CHECK(nonzero == 2);
    }
  }
}

TEST_CASE("chain map and naturality on every generated fixture")
{
  for (const auto& name : builtin_cw_fixtures()) {
    CAPTURE(name);
    EquivariantCWData d = builtin_cw_fixture(name);
    CHECK_NOTHROW(validate(d));
    for (std::size_t n = 0; n < d.cells_M.size(); ++n) {
      IntMatrix theta = theta_on_cochains(d, n);
      CHECK(pi_star_on_cochains(d, n) * theta == IntMatrix::identity(d.cells_M[n]) + iota_star_on_cochains(d, n));
      if (n + 1 < d.cells_M.size())
        CHECK(d.delta_Q[n] * theta == theta_on_cochains(d, n + 1) * d.delta_M[n]);
    }
  }
}

TEST_CASE("cohomology groups satisfy universal coefficients modulo primes")
{
  for (const auto& name : builtin_cw_fixtures()) {
    if (name.find("fine") != std::string::npos)
      continue;
    CAPTURE(name);
    EquivariantCWData d = builtin_cw_fixture(name);
    check_universal_coefficients(d.cells_M, d.delta_M);
    check_universal_coefficients(d.cells_Q, d.delta_Q);
  }
}

TEST_CASE("known cohomology of the fixtures")
{
  auto H = [](const std::string& name, std::size_t n) {
    EquivariantCWData d = builtin_cw_fixture(name);
    return sorted(CohomologyGroup(d.cells_M, d.delta_M, n).invariants());
  };
  CHECK(H("s3-conjugation", 3) == std::vector<Integer>{0});
  CHECK(H("s3-conjugation", 2).empty());
  CHECK(H("lens-5-2", 2) == std::vector<Integer>{5});
  CHECK(H("lens-7-3", 1).empty());
  CHECK(H("s1xs2-rotation", 1) == std::vector<Integer>{0});
  CHECK(H("s1xs2-rotation", 2) == std::vector<Integer>{0});
  CHECK(H("t2-hyperelliptic", 1) == std::vector<Integer>{0, 0});
}

TEST_CASE("theta on cohomology")
{
  SUBCASE("vanishing source gives the zero map")
  {
    CohomologyMap m = theta_on_cohomology(builtin_cw_fixture("s3-conjugation"), 1);
    CHECK(m.source.generator_count() == 0);
    CHECK(m.matrix.is_zero());
  }
  SUBCASE("lens spaces in degree 2")
  {
    for (const char* name : {"lens-2-1", "lens-3-1", "lens-5-2", "lens-7-2", "lens-7-3"}) {
      CAPTURE(name);
      EquivariantCWData d = builtin_cw_fixture(name);
      CohomologyMap m = theta_on_cohomology(d, 2);
      CHECK(m.target.generator_count() == 0);
      CHECK(kernel_invariants(m) == m.source.invariants());
    }
  }
  SUBCASE("a broken coboundary is not a chain map")
  {
    EquivariantCWData d = builtin_cw_fixture("circle-reflection");
    d.delta_Q[0] = IntMatrix(d.delta_Q[0].rows(), d.delta_Q[0].cols());
    CHECK(code_of([&] { theta_on_cohomology(d, 0); }) == ErrorCode::NotChainMap);
  }
}

TEST_CASE("torus with the hyperelliptic involution by cocycle enumeration")
{
  EquivariantCWData d = builtin_cw_fixture("t2-hyperelliptic");
  CohomologyGroup h1(d.cells_M, d.delta_M, 1);
  REQUIRE(h1.invariants() == std::vector<Integer>{0, 0});
  const IntMatrix iota = iota_star_on_cochains(d, 1);
  const std::size_t n = d.cells_M[1];
  IntVector beta(n, 0);
  std::size_t cocycles = 0;
  IntMatrix span(2, 0);
  std::vector<IntVector> classes;
  // all cochains with entries in {-1, 0, 1}
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k)
    total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t k = 0; k < n; ++k, c /= 3)
      beta[k] = static_cast<int>(c % 3) - 1;
    if (!h1.is_cocycle(beta))
      continue;
    ++cocycles;
    IntVector x = h1.coordinates(beta);
    IntVector y = h1.coordinates(iota.apply(beta));
    for (std::size_t k = 0; k < 2; ++k)
      CHECK(y[k] == -x[k]);
    classes.push_back(x);
  }
  CHECK(cocycles > 1);
  IntMatrix gens = IntMatrix::from_columns(2, classes);
  CHECK(cokernel_invariants(gens).empty()); // the small cocycles already generate Z^2
  CohomologyMap t1 = theta_on_cohomology(d, 1);
  CHECK(sorted(kernel_invariants(t1)) == std::vector<Integer>{0, 0});
  CHECK(kernel_invariants(theta_on_cohomology(d, 2)).empty());
}

TEST_CASE("existence of real structures")
{
  EquivariantCWData lens = builtin_cw_fixture("lens-5-2");
  CohomologyGroup h2(lens.cells_M, lens.delta_M, 2);
  CHECK(admits_real_structure(lens, IntVector(lens.cells_M[2], 0)));
  for (int k = 1; k < 5; ++k) {
    IntVector c1 = h2.generator(0);
    for (auto& x : c1)
      x *= k;
    CHECK(admits_real_structure(lens, c1));
  }
  EquivariantCWData s = builtin_cw_fixture("s1xs2-rotation");
  CohomologyGroup g(s.cells_M, s.delta_M, 2);
  for (int k = -3; k <= 3; ++k) {
    IntVector c1 = g.generator(0);
    for (auto& x : c1)
      x *= k;
    CHECK(admits_real_structure(s, c1) == (k == 0));
  }
  IntVector bad(s.cells_M[2], 0);
  bad[0] = 1;
  if (!g.is_cocycle(bad))
    CHECK(code_of([&] { admits_real_structure(s, bad); }) == ErrorCode::NotCocycle);
  CHECK(code_of([&] { admits_real_structure(s, IntVector(1, 0)); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("classes of real structures")
{
  CHECK(real_structure_classes(builtin_cw_fixture("s1xs2-rotation")) == std::vector<Integer>{2});
  CHECK(real_structure_classes(builtin_cw_fixture("s3-conjugation")).empty());
  for (const char* name : {"lens-3-1", "lens-5-2", "lens-7-2"})
    CHECK(real_structure_classes(builtin_cw_fixture(name)).empty());
}

TEST_CASE("census of real spin-c structures")
{
  for (int p : {2, 3, 5, 7})
    for (int q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1)
        continue;
      const std::string name = "lens-" + std::to_string(p) + "-" + std::to_string(q);
      CAPTURE(name);
      RealStructureCensus c = real_spinc_torsor(builtin_cw_fixture(name));
      CHECK(c.exists);
      CHECK(c.size == p);
      CHECK(c.routes_agree);
    }
  CHECK(real_spinc_torsor(builtin_cw_fixture("s3-conjugation")).size == 1);
  RealStructureCensus s = real_spinc_torsor(builtin_cw_fixture("s1xs2-rotation"));
  CHECK(s.size == 2);
  CHECK(s.routes_agree);
  // unlink cover: H^2(M) = Z dies in H^2(S^3), H^1 quotient trivial
  RealStructureCensus u = real_spinc_torsor(builtin_cw_fixture("s1xs2-unlink"));
  CHECK(u.ker_theta == std::vector<Integer>{0});
  CHECK(u.h1_quotient.empty());
  CHECK_FALSE(u.finite);
  CHECK(u.size == 0);
  CHECK(u.torsion_size == 1);
  CHECK(u.routes_agree);
}

TEST_CASE("census is invariant under subdivision")
{
  for (const char* base : {"s3-conjugation", "s1xs2-rotation", "s1xs2-unlink", "t2-hyperelliptic", "lens-3-1",
                           "lens-5-2"}) {
    CAPTURE(base);
    RealStructureCensus a = real_spinc_torsor(builtin_cw_fixture(base));
    RealStructureCensus b = real_spinc_torsor(builtin_cw_fixture(std::string(base) + "-fine"));
    CHECK(a.torsor == b.torsor);
    CHECK(a.size == b.size);
  }
}

TEST_CASE("census error paths")
{
  CHECK(code_of([] { real_spinc_torsor(builtin_cw_fixture("circle-rotation")); }) == ErrorCode::InvalidArgument);
  EquivariantCWData s = builtin_cw_fixture("s1xs2-rotation");
  IntVector c1 = CohomologyGroup(s.cells_M, s.delta_M, 2).generator(0);
  CHECK(code_of([&] { real_spinc_torsor(s, c1); }) == ErrorCode::NoRealStructure);
  CHECK(code_of([&] { real_spinc_torsor(s, std::nullopt, false); }) == ErrorCode::NoRealStructure);
}

TEST_CASE("malformed orbit maps")
{
  EquivariantCWData d = builtin_cw_fixture("circle-reflection");
  auto broken = d;
  broken.orbit.pop_back();
  CHECK(code_of([&] { validate(broken); }) == ErrorCode::MalformedOrbitMap);
  broken = d;
  broken.orbit[0].image = 99;
  CHECK(code_of([&] { validate(broken); }) == ErrorCode::MalformedOrbitMap);
  broken = d;
  broken.orbit[0].sign = 0;
  CHECK(code_of([&] { validate(broken); }) == ErrorCode::MalformedOrbitMap);
  broken = d;
  broken.orbit[2].fixed = true;
  CHECK(code_of([&] { validate(broken); }) == ErrorCode::MalformedOrbitMap);
  broken = d;
  broken.delta_M[0](0, 0) = 5;
  CHECK(code_of([&] { theta_on_cohomology(broken, 0); }) == ErrorCode::NotChainMap);
}

TEST_CASE("fixture names")
{
  CHECK(code_of([] { builtin_cw_fixture("lens-4-2"); }) == ErrorCode::NotCoprime);
  CHECK(code_of([] { builtin_cw_fixture("klein-bottle"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("branched double covers against the Alexander polynomial")
{
  const std::vector<std::vector<std::vector<long long>>> cases = {
      {},                                        // unknot
      {{-1, 1}, {0, -1}},                        // trefoil
      {{-1, 1}, {0, 1}},                         // figure-eight
      {{0}},                                     // split unlink
      {{-1, 1, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 1}, {0, 0, 0, -1}}, // trefoil # trefoil
      {{-2, 1}, {0, 2}},
      {{1, 0, 1}, {1, 1, 0}, {0, 1, -1}}};
  const std::vector<std::pair<long long, std::size_t>> expect = {{1, 0}, {3, 0}, {5, 0}, {0, 1}, {9, 0}};
  for (std::size_t k = 0; k < cases.size(); ++k) {
    CAPTURE(k);
    const auto& A = cases[k];
    IntMatrix m = A.empty() ? IntMatrix(0, 0) : IntMatrix::from_rows(A);
    BranchedCoverInvariants r = branched_cover_invariants(m);
    const long long alex = std::llabs(oracle::evaluate(oracle::alexander_polynomial(A), -1));
    CHECK(r.order == alex);
    if (k < expect.size()) {
      CHECK(r.order == expect[k].first);
      CHECK(r.b1 == expect[k].second);
    }
  }
}

TEST_CASE("branched cover invariants under congruence")
{
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<int> e(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 4;
    IntMatrix A(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        A(i, j) = e(rng);
    IntMatrix P = IntMatrix::identity(n);
    for (int k = 0; k < 6 && n > 1; ++k) {
      const std::size_t a = static_cast<std::size_t>(trial + k) % n, b = static_cast<std::size_t>(trial + 2 * k + 1) % n;
      if (a == b)
        continue;
      const int s = e(rng);
      for (std::size_t i = 0; i < n; ++i)
        P(i, a) += s * P(i, b);
    }
    BranchedCoverInvariants x = branched_cover_invariants(A);
    BranchedCoverInvariants y = branched_cover_invariants(P.transpose() * A * P);
    CHECK(x.order == y.order);
    CHECK(x.b1 == y.b1);
    CHECK(x.h1_invariants == y.h1_invariants);
  }
  CHECK(code_of([] { branched_cover_invariants(IntMatrix(2, 3)); }) == ErrorCode::ShapeMismatch);
}
