#include "doctest.h"
#include "oracles.hpp"

#include "hmrkit/complexes.hpp"
#include "hmrkit/error.hpp"
#include "hmrkit/morse_blowup.hpp"

using namespace hmrkit;

namespace {

BlockDifferentials three_generator_blocks()
{
  BlockDifferentials b;
  b.interior = {{"o0", Kind::Interior, 1}};
  b.stable = {{"s0", Kind::Stable, 0}};
  b.unstable = {{"u0", Kind::Unstable, 2}};
  b.reset_blocks();
  return b;
}

std::size_t count_grades(const GradedComplex& c, std::int64_t g)
{
  return static_cast<std::size_t>(std::count(c.grades.begin(), c.grades.end(), g));
}

}

TEST_CASE("zero blocks give zero differentials and identity-bearing maps")
{
  BlockDifferentials b = three_generator_blocks();
  ThreeComplexes c = assemble(b);
  CHECK(c.check.d.is_zero());
  CHECK(c.hat.d.is_zero());
  CHECK(c.bar.d.is_zero());
  CHECK(verify_d_squared(c));
  LesMaps m = les_maps(b);
  CHECK(m.i == F2Matrix::from_positions(2, 2, {{1, 0}}));
  CHECK(m.j == F2Matrix::from_positions(2, 2, {{0, 0}}));
  CHECK(m.p == F2Matrix::from_positions(2, 2, {{1, 1}}));
  CHECK(chain_map_identities_hold(c, m));
  for (Flavor f : {Flavor::Check, Flavor::Hat, Flavor::Bar}) {
    GradedRanks h = homology(c, f);
    const GradedComplex& gc = c.get(f);
    for (auto [g, r] : h)
      CHECK(r == count_grades(gc, g));
    CHECK(total_rank(h) == gc.grades.size());
  }
}

TEST_CASE("grading and shape violations")
{
  BlockDifferentials b = three_generator_blocks();
  b.os.set(0, 0, true); // o0 (gr 1) -> s0 (gr 0) is fine
  CHECK_NOTHROW(assemble(b));
  b.uo.set(0, 0, true); // u0 (gr 2) -> o0 (gr 1) is fine
  CHECK_NOTHROW(assemble(b));
  BlockDifferentials bad = three_generator_blocks();
  bad.bar_su.set(0, 0, true); // bar_gr 0 -> bar_gr 1
  try {
    assemble(bad);
    FAIL("expected GradingViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GradingViolation);
  }
  BlockDifferentials shape = three_generator_blocks();
  shape.oo = F2Matrix(2, 2);
  try {
    assemble(shape);
    FAIL("expected ShapeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ShapeMismatch);
  }
}

TEST_CASE("assembled totals agree with the block formulas")
{
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    BlockDifferentials b = oracle::random_valid_blocks(rng);
    ThreeComplexes c = assemble(b);
    oracle::DenseTriple t = oracle::total_differentials(b);
    CHECK(oracle::to_dense(c.check.d) == t.check);
    CHECK(oracle::to_dense(c.hat.d) == t.hat);
    CHECK(oracle::to_dense(c.bar.d) == t.bar);
    CHECK(verify_d_squared(c));
  }
}

TEST_CASE("homology matches dense elimination on random valid complexes")
{
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    BlockDifferentials b = oracle::random_valid_blocks(rng, 4, 4);
    ThreeComplexes c = assemble(b);
    for (Flavor f : {Flavor::Check, Flavor::Hat, Flavor::Bar}) {
      const GradedComplex& gc = c.get(f);
      CHECK(homology(c, f) == oracle::homology_ranks(oracle::to_dense(gc.d), gc.grades));
    }
  }
}

TEST_CASE("chain maps and exactness on random valid complexes")
{
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    BlockDifferentials b = oracle::random_valid_blocks(rng, 4, 4);
    ThreeComplexes c = assemble(b);
    LesMaps m = les_maps(b);
    auto d = [](const F2Matrix& x) { return oracle::to_dense(x); };
    CHECK(oracle::mul(d(m.i), d(c.bar.d), c.bar.d.rows()) == oracle::mul(d(c.check.d), d(m.i), c.check.d.rows()));
    CHECK(oracle::mul(d(m.j), d(c.check.d), c.check.d.rows()) == oracle::mul(d(c.hat.d), d(m.j), c.hat.d.rows()));
    CHECK(oracle::mul(d(m.p), d(c.hat.d), c.hat.d.rows()) == oracle::mul(d(c.bar.d), d(m.p), c.bar.d.rows()));
    CHECK(chain_map_identities_hold(c, m));
    LesReport r = les_exactness(c, m);
    CHECK(r.exact);
    // rank H(check) <= rank H(bar) + rank H(hat) grading by grading
    auto hc = homology(c, Flavor::Check), hh = homology(c, Flavor::Hat), hb = homology(c, Flavor::Bar);
    for (auto [g, r0] : hc)
      CHECK(r0 <= (hb.count(g) ? hb[g] : 0) + (hh.count(g) ? hh[g] : 0));
  }
}

TEST_CASE("a flipped entry is detected")
{
  std::mt19937_64 rng(34);
  int detected = 0, tried = 0;
  for (int trial = 0; trial < 200 && tried < 40; ++trial) {
    BlockDifferentials b = oracle::random_valid_blocks(rng, 3, 3);
    ThreeComplexes c = assemble(b);
    auto pos = c.bar.d.positions();
    if (pos.empty())
      continue;
    ++tried;
    // flip a composable entry: bar_d (x -> y) then also add y -> z where z receives x's image
    ThreeComplexes broken = c;
    const auto [r, col] = pos.front();
    for (std::size_t z = 0; z < broken.bar.d.rows(); ++z)
      if (broken.bar.grades[z] + 1 == broken.bar.grades[r]) {
        broken.bar.d.flip(z, r);
        const bool oracle_zero = oracle::squares_to_zero(oracle::to_dense(broken.bar.d)) &&
                                 oracle::squares_to_zero(oracle::to_dense(broken.check.d)) &&
                                 oracle::squares_to_zero(oracle::to_dense(broken.hat.d));
        CHECK(verify_d_squared(broken) == oracle_zero);
        if (!oracle_zero)
          ++detected;
        break;
      }
  }
  CHECK(detected > 0);
}

TEST_CASE("homology of a non-complex throws")
{
  ThreeComplexes c;
  c.bar.d = F2Matrix::from_positions(3, 3, {{1, 0}, {2, 1}});
  c.bar.grades = {2, 1, 0};
  c.bar.ids = {"a", "b", "c"};
  CHECK_FALSE(verify_d_squared(c));
  try {
    homology(c, Flavor::Bar);
    FAIL("expected CompositionNonzero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CompositionNonzero);
  }
}

TEST_CASE("RP models for n = 2..8")
{
  for (std::size_t n = 2; n <= 8; ++n)
    for (std::size_t neg = 0; neg <= n; ++neg) {
      std::vector<double> spectrum;
      for (std::size_t k = 0; k < n; ++k)
        spectrum.push_back(static_cast<double>(k) - static_cast<double>(neg) + (k < neg ? 0.0 : 1.0));
      BaseMorseData base;
      base.points.push_back({"q0", 0, diagonal_model(spectrum)});
      BlockDifferentials b = build_model_complexes(base);
      ThreeComplexes c = assemble(b);
      CHECK(verify_d_squared(c));
      CHECK(total_rank(homology(c, Flavor::Bar)) == n);
      CHECK(total_rank(homology(c, Flavor::Check)) == n - neg);
      CHECK(total_rank(homology(c, Flavor::Hat)) == neg);
      auto hb = homology(c, Flavor::Bar);
      for (auto [g, r] : hb)
        CHECK(r == 1);
      CHECK(verify_les_exact(c, les_maps(b)));
    }
}
