#include "hmrkit/seifert_hmr.hpp"

#include "hmrkit/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace hmrkit {

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

std::vector<std::int64_t> split_ints(const std::string& s)
{
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size())
        throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      fail(ErrorCode::UnknownFamily, "cannot parse family " + s);
    }
  }
  return out;
}

}

TowerTriple psc_hmr(std::uint64_t b1_inv, bool torsion)
{
  TowerTriple t;
  if (!torsion)
    return t;
  for (std::uint64_t d = 0; d <= b1_inv; ++d) {
    const auto dd = static_cast<std::int64_t>(d);
    for (std::uint64_t c = 0; c < binomial(b1_inv, d); ++c) {
      t.hat.add_tower(TowerType::Down, dd);
      t.check.add_tower(TowerType::Up, dd - 1);
      t.bar.add_tower(TowerType::Full, dd);
    }
  }
  return t;
}

std::vector<TowerTriple> lens_hmr(std::int64_t p, std::int64_t q)
{
  if (p < 1 || q < 0)
    fail(ErrorCode::InvalidArgument, "lens space parameters must be nonnegative with p >= 1");
  if (std::gcd(p, q) != 1)
    fail(ErrorCode::NotCoprime, "gcd(p, q) != 1");
  if (!(p > q))
    fail(ErrorCode::InvalidArgument, "lens space needs p > q");
  return std::vector<TowerTriple>(static_cast<std::size_t>(p), psc_hmr(0, true));
}

const char* family_name(BrieskornFamily f)
{
  switch (f) {
  case BrieskornFamily::Plus6: return "2,3,6k+1";
  case BrieskornFamily::Minus6: return "2,3,6k-1";
  case BrieskornFamily::Minus10: return "2,5,10k-1";
  case BrieskornFamily::Plus10: return "2,5,10k+1";
  case BrieskornFamily::Sporadic29: return "2,7,29";
  }
  return "?";
}

BrieskornFamily parse_family(const std::string& s, std::optional<std::int64_t>* k_from_triple)
{
  auto v = split_ints(s);
  if (v.size() != 3 || v[0] != 2)
    fail(ErrorCode::UnknownFamily, "unknown Brieskorn family " + s);
  const bool signed_last = s.find(",+") != std::string::npos || s.find(",-") != std::string::npos;
  auto member = [&](BrieskornFamily f, std::int64_t k) {
    if (k_from_triple)
      *k_from_triple = k;
    return f;
  };
  if (v[1] == 3 && signed_last && v[2] == 1)
    return BrieskornFamily::Plus6;
  if (v[1] == 3 && signed_last && v[2] == -1)
    return BrieskornFamily::Minus6;
  if (v[1] == 5 && signed_last && v[2] == 1)
    return BrieskornFamily::Plus10;
  if (v[1] == 5 && signed_last && v[2] == -1)
    return BrieskornFamily::Minus10;
  if (v[1] == 7 && v[2] == 29)
    return BrieskornFamily::Sporadic29;
  if (!signed_last && v[1] == 3 && v[2] > 1 && (v[2] - 1) % 6 == 0)
    return member(BrieskornFamily::Plus6, (v[2] - 1) / 6);
  if (!signed_last && v[1] == 3 && v[2] > 1 && (v[2] + 1) % 6 == 0)
    return member(BrieskornFamily::Minus6, (v[2] + 1) / 6);
  if (!signed_last && v[1] == 5 && v[2] > 1 && (v[2] - 1) % 10 == 0)
    return member(BrieskornFamily::Plus10, (v[2] - 1) / 10);
  if (!signed_last && v[1] == 5 && v[2] > 1 && (v[2] + 1) % 10 == 0)
    return member(BrieskornFamily::Minus10, (v[2] + 1) / 10);
  fail(ErrorCode::UnknownFamily, "unknown Brieskorn family " + s);
}

std::tuple<std::int64_t, std::int64_t, std::int64_t> brieskorn_triple(BrieskornFamily f, std::int64_t k)
{
  switch (f) {
  case BrieskornFamily::Plus6: return {2, 3, 6 * k + 1};
  case BrieskornFamily::Minus6: return {2, 3, 6 * k - 1};
  case BrieskornFamily::Minus10: return {2, 5, 10 * k - 1};
  case BrieskornFamily::Plus10: return {2, 5, 10 * k + 1};
  case BrieskornFamily::Sporadic29: return {2, 7, 29};
  }
  fail(ErrorCode::UnknownFamily, "unknown Brieskorn family");
}

std::size_t IrreducibleSpectrum::irreducible_count() const
{
  std::size_t n = 0;
  for (const auto& [g, c] : irreducibles)
    n += c;
  return n;
}

IrreducibleSpectrum brieskorn_irreducibles(const BrieskornInput& in)
{
  IrreducibleSpectrum s;
  s.family = in.family;
  s.k = in.family == BrieskornFamily::Sporadic29 ? 1 : in.k;
  if (in.family != BrieskornFamily::Sporadic29 && in.k < 1)
    fail(ErrorCode::InvalidArgument, "k must be a positive integer");
  const std::int64_t k = s.k;
  const auto half = static_cast<std::size_t>(2 * (k / 2));
  auto add = [&](std::int64_t g, std::size_t n) {
    if (n > 0)
      s.irreducibles[g] += n;
  };
  switch (in.family) {
  case BrieskornFamily::Plus6:
  case BrieskornFamily::Minus6:
    add(0, half);
    s.theta_minus1 = -1;
    s.hat_undetermined = in.family == BrieskornFamily::Minus6;
    break;
  case BrieskornFamily::Minus10:
  case BrieskornFamily::Plus10:
    for (std::int64_t i = 0; i < k; ++i)
      add(i, 2);
    add(k, half);
    s.theta_minus1 = in.family == BrieskornFamily::Minus10 ? k + 1 : k;
    break;
  case BrieskornFamily::Sporadic29:
    for (std::int64_t g : {0, 2, 4, 5, 6, 5})
      add(g, 2);
    s.theta_minus1 = 7;
    s.index_one_counts.emplace_back(6, 5, 2);
    break;
  }
  return s;
}

DivisorCalibration load_divisor_calibration(const std::string& fixture_dir)
{
  const std::string path = fixture_dir + "/divisor_calibration.json";
  std::ifstream in(path);
  if (!in)
    fail(ErrorCode::Io, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
    DivisorCalibration c;
    c.congruence_modulus = j.at("congruence_modulus").get<std::int64_t>();
    c.congruence_residue = j.at("congruence_residue").get<std::int64_t>();
    c.window_margin = j.at("window_margin").get<std::int64_t>();
    if (c.congruence_modulus < 1)
      fail(ErrorCode::InvalidArgument, "congruence_modulus must be positive");
    return c;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::MalformedJson, path + ": " + e.what());
  }
}

std::size_t divisor_count(std::int64_t p, std::int64_t q, std::int64_t r, const DivisorCalibration& cal,
                          std::int64_t degree_resolution)
{
  if (p < 2 || q < 2 || r < 2)
    fail(ErrorCode::InvalidArgument, "Seifert invariants must be at least 2");
  if (std::gcd(p, q) != 1 || std::gcd(p, r) != 1 || std::gcd(q, r) != 1)
    fail(ErrorCode::NotCoprime, "p, q, r are not pairwise coprime");
  const std::int64_t A = p * q * r;
  if (degree_resolution != 0 && (degree_resolution < 0 || degree_resolution % A != 0))
    fail(ErrorCode::InvalidArgument, "degree resolution must be a positive multiple of pqr");
  // 2 * pqr * deg(K)/2 in units of 1/pqr
  const std::int64_t window = A - q * r - p * r - p * q;
  std::size_t count = 0;
  for (std::int64_t e = 0; 2 * (e * A + cal.window_margin) < window; ++e)
    for (std::int64_t b1 = 0; b1 < p; ++b1)
      for (std::int64_t b2 = 0; b2 < q; ++b2)
        for (std::int64_t b3 = 0; b3 < r; ++b3) {
          const std::int64_t n = e * A + b1 * q * r + b2 * p * r + b3 * p * q;
          if (2 * (n + cal.window_margin) >= window)
            continue;
          const std::int64_t res = ((n % cal.congruence_modulus) + cal.congruence_modulus) % cal.congruence_modulus;
          if (res == cal.congruence_residue)
            ++count;
        }
  return count;
}

std::pair<std::int64_t, std::int64_t> default_window(const IrreducibleSpectrum& spectrum)
{
  std::int64_t lo = spectrum.theta_minus1, hi = spectrum.theta_minus1;
  for (const auto& [g, c] : spectrum.irreducibles) {
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  return {lo - 2, hi + 10};
}

namespace {

// theta_i sits at g + i for i >= 0 (boundary-stable) and g + i + 1 for i < 0 (boundary-unstable).
BlockDifferentials brieskorn_blocks(const IrreducibleSpectrum& spectrum, std::pair<std::int64_t, std::int64_t> w)
{
  BlockDifferentials b;
  for (const auto& [g, c] : spectrum.irreducibles)
    for (std::size_t j = 0; j < c; ++j) {
      const char* tag = j % 2 == 0 ? "alpha" : "beta";
      b.interior.push_back({std::string(tag) + "_" + std::to_string(g) + "_" + std::to_string(j / 2), Kind::Interior, g});
    }
  const std::int64_t g = spectrum.theta_minus1;
  for (std::int64_t i = 0; g + i <= w.second; ++i)
    b.stable.push_back({"theta_" + std::to_string(i), Kind::Stable, g + i});
  for (std::int64_t i = -1; g + i + 1 >= w.first; --i)
    b.unstable.push_back({"theta_" + std::to_string(i), Kind::Unstable, g + i + 1});
  b.reset_blocks();
  for (const auto& [from, to, raw] : spectrum.index_one_counts) {
    auto find = [&](std::int64_t gr) {
      for (std::size_t k = 0; k < b.interior.size(); ++k)
        if (b.interior[k].gr == gr)
          return k;
      fail(ErrorCode::Internal, "index-one count refers to a missing generator");
    };
    if (raw % 2 == 1)
      b.oo.flip(find(to), find(from));
  }
  return b;
}

TowerTriple symbolic_modules(const IrreducibleSpectrum& spectrum)
{
  TowerTriple t;
  for (const auto& [g, c] : spectrum.irreducibles) {
    t.hat.add_finite(g, c);
    t.check.add_finite(g, c);
  }
  t.hat.add_tower(TowerType::Down, spectrum.theta_minus1);
  t.check.add_tower(TowerType::Up, spectrum.theta_minus1 - 1);
  t.bar.add_tower(TowerType::Full, spectrum.theta_minus1);
  t.hat.undetermined = spectrum.hat_undetermined;
  return t;
}

}

BrieskornResult assemble_brieskorn_hmr(const IrreducibleSpectrum& spectrum,
                                       std::optional<std::pair<std::int64_t, std::int64_t>> window)
{
  BrieskornResult r;
  r.spectrum = spectrum;
  r.window = window ? *window : default_window(spectrum);
  auto [lo, hi] = r.window;
  if (lo > hi)
    fail(ErrorCode::InvalidArgument, "empty grading window");
  auto inside = [&](std::int64_t g) { return lo <= g && g <= hi; };
  if (!inside(spectrum.theta_minus1))
    fail(ErrorCode::InvalidArgument, "window must contain the grading of theta_-1");
  for (const auto& [g, c] : spectrum.irreducibles)
    if (!inside(g))
      fail(ErrorCode::InvalidArgument, "window must contain every irreducible grading");

  r.modules = symbolic_modules(spectrum);
  r.blocks = brieskorn_blocks(spectrum, r.window);
  r.complexes = assemble(r.blocks);
  r.d_squared = verify_d_squared(r.complexes);
  r.les = les_exactness(r.complexes, les_maps(r.blocks), r.window);
  for (Flavor f : {Flavor::Hat, Flavor::Check, Flavor::Bar}) {
    if (f == Flavor::Hat && spectrum.hat_undetermined)
      continue;
    GradedRanks h = homology(r.complexes, f);
    bool ok = true;
    for (std::int64_t g = lo + 1; g < hi; ++g) {
      std::size_t got = h.count(g) ? h.at(g) : 0;
      ok = ok && got == r.modules.get(f).rank_at(g);
    }
    r.explicit_matches[flavor_name(f)] = ok;
  }
  return r;
}

const TowerModule& require_determined(const BrieskornResult& r, Flavor f)
{
  const TowerModule& m = r.modules.get(f);
  if (m.undetermined)
    fail(ErrorCode::AmbiguousDifferential,
         std::string("HMR ") + flavor_name(f) + " of the " + family_name(r.spectrum.family) +
             " family depends on a differential that is not determined");
  return m;
}

}
