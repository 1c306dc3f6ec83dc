#include "hmrkit/complexes.hpp"

#include "hmrkit/error.hpp"

#include <algorithm>
#include <set>

namespace hmrkit {

char kind_letter(Kind k)
{
  switch (k) {
  case Kind::Interior: return 'o';
  case Kind::Stable: return 's';
  case Kind::Unstable: return 'u';
  }
  return '?';
}

Kind kind_from_letter(char c)
{
  switch (c) {
  case 'o': return Kind::Interior;
  case 's': return Kind::Stable;
  case 'u': return Kind::Unstable;
  default: fail(ErrorCode::InvalidArgument, std::string("unknown generator kind '") + c + "'");
  }
}

const char* flavor_name(Flavor f)
{
  switch (f) {
  case Flavor::Check: return "check";
  case Flavor::Hat: return "hat";
  case Flavor::Bar: return "bar";
  }
  return "?";
}

void BlockDifferentials::reset_blocks()
{
  const std::size_t no = interior.size(), ns = stable.size(), nu = unstable.size();
  oo = F2Matrix(no, no);
  os = F2Matrix(ns, no);
  uo = F2Matrix(no, nu);
  us = F2Matrix(ns, nu);
  bar_ss = F2Matrix(ns, ns);
  bar_us = F2Matrix(ns, nu);
  bar_su = F2Matrix(nu, ns);
  bar_uu = F2Matrix(nu, nu);
}

const GradedComplex& ThreeComplexes::get(Flavor f) const
{
  switch (f) {
  case Flavor::Check: return check;
  case Flavor::Hat: return hat;
  default: return bar;
  }
}

namespace {

void check_shape(const F2Matrix& m, std::size_t rows, std::size_t cols, const char* name)
{
  if (m.rows() != rows || m.cols() != cols)
    fail(ErrorCode::ShapeMismatch, std::string("block ") + name + " is " + std::to_string(m.rows()) + "x" +
                                       std::to_string(m.cols()) + ", expected " + std::to_string(rows) + "x" +
                                       std::to_string(cols));
}

void check_kinds(const std::vector<Generator>& gens, Kind k)
{
  for (const auto& g : gens)
    if (g.kind != k)
      fail(ErrorCode::ShapeMismatch, "generator " + g.id + " listed under the wrong kind");
}

void validate_shapes(const BlockDifferentials& b)
{
  const std::size_t no = b.interior.size(), ns = b.stable.size(), nu = b.unstable.size();
  check_kinds(b.interior, Kind::Interior);
  check_kinds(b.stable, Kind::Stable);
  check_kinds(b.unstable, Kind::Unstable);
  check_shape(b.oo, no, no, "oo");
  check_shape(b.os, ns, no, "os");
  check_shape(b.uo, no, nu, "uo");
  check_shape(b.us, ns, nu, "us");
  check_shape(b.bar_ss, ns, ns, "bar_ss");
  check_shape(b.bar_us, ns, nu, "bar_us");
  check_shape(b.bar_su, nu, ns, "bar_su");
  check_shape(b.bar_uu, nu, nu, "bar_uu");
}

void check_drop(const F2Matrix& m, const std::vector<Generator>& tgt, const std::vector<Generator>& src, bool bar,
                const char* name)
{
  for (auto [r, c] : m.positions()) {
    std::int64_t drop = bar ? src[c].bar_gr() - tgt[r].bar_gr() : src[c].gr - tgt[r].gr;
    if (drop != 1)
      fail(ErrorCode::GradingViolation, std::string("block ") + name + " entry " + src[c].id + " -> " + tgt[r].id +
                                            " changes the grading by " + std::to_string(-drop));
  }
}

void validate_gradings(const BlockDifferentials& b)
{
  check_drop(b.oo, b.interior, b.interior, false, "oo");
  check_drop(b.os, b.stable, b.interior, false, "os");
  check_drop(b.uo, b.interior, b.unstable, false, "uo");
  check_drop(b.us, b.stable, b.unstable, false, "us");
  check_drop(b.bar_ss, b.stable, b.stable, true, "bar_ss");
  check_drop(b.bar_us, b.stable, b.unstable, true, "bar_us");
  check_drop(b.bar_su, b.unstable, b.stable, true, "bar_su");
  check_drop(b.bar_uu, b.unstable, b.unstable, true, "bar_uu");
}

void append(GradedComplex& c, const std::vector<Generator>& gens, bool bar)
{
  for (const auto& g : gens) {
    c.grades.push_back(bar ? g.bar_gr() : g.gr);
    c.ids.push_back(g.id);
  }
}

std::vector<std::size_t> indices_at(const GradedComplex& c, std::int64_t g)
{
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < c.grades.size(); ++k)
    if (c.grades[k] == g)
      idx.push_back(k);
  return idx;
}

std::vector<F2Vector> lift(const std::vector<F2Vector>& local, const std::vector<std::size_t>& idx)
{
  std::vector<F2Vector> out;
  for (const auto& v : local) {
    F2Vector w;
    for (std::size_t k : v)
      w.push_back(idx[k]);
    std::sort(w.begin(), w.end());
    out.push_back(std::move(w));
  }
  return out;
}

// Cycle and boundary bases of one graded piece, as vectors in the full chain group.
struct Piece {
  std::vector<F2Vector> cycles;
  std::vector<F2Vector> boundaries;
};

Piece piece(const GradedComplex& c, std::int64_t g)
{
  Piece p;
  auto idx = indices_at(c, g);
  p.cycles = lift(f2_kernel_basis(c.d.select_cols(idx)), idx);
  auto above = indices_at(c, g + 1);
  for (std::size_t k : above)
    p.boundaries.push_back(c.d.column(k));
  return p;
}

std::size_t span_dim(std::size_t n, const std::vector<F2Vector>& vecs)
{
  if (vecs.empty())
    return 0;
  return f2_rank(F2Matrix::from_columns(n, vecs));
}

std::vector<F2Vector> image(const F2Matrix& f, const std::vector<F2Vector>& vecs)
{
  std::vector<F2Vector> out;
  for (const auto& v : vecs)
    out.push_back(f.apply(v));
  return out;
}

std::vector<F2Vector> concat(std::vector<F2Vector> a, const std::vector<F2Vector>& b)
{
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Exactness of H(A) -f-> H(B) -g-> H(C) at B.
bool exact_at(const GradedComplex& A, std::int64_t ga, const F2Matrix& f, const GradedComplex& B, std::int64_t gb,
              const F2Matrix& g, const GradedComplex& C, std::int64_t gc)
{
  Piece pa = piece(A, ga), pb = piece(B, gb), pc = piece(C, gc);
  const std::size_t nb = B.grades.size(), nc = C.grades.size();
  auto fz = image(f, pa.cycles);
  std::size_t dim_bb = span_dim(nb, pb.boundaries);
  std::size_t dim_bc = span_dim(nc, pc.boundaries);
  std::size_t h_b = pb.cycles.size() - dim_bb;
  std::size_t rank_f = span_dim(nb, concat(fz, pb.boundaries)) - dim_bb;
  std::size_t rank_g = span_dim(nc, concat(image(g, pb.cycles), pc.boundaries)) - dim_bc;
  bool gf_zero = span_dim(nc, concat(image(g, fz), pc.boundaries)) == dim_bc;
  return gf_zero && rank_f + rank_g == h_b;
}

}

ThreeComplexes assemble(const BlockDifferentials& b)
{
  validate_shapes(b);
  validate_gradings(b);
  ThreeComplexes c;
  c.check.d = F2Matrix::block({{b.oo, b.uo * b.bar_su}, {b.os, b.bar_ss + b.us * b.bar_su}});
  c.hat.d = F2Matrix::block({{b.oo, b.uo}, {b.bar_su * b.os, b.bar_uu + b.bar_su * b.us}});
  c.bar.d = F2Matrix::block({{b.bar_ss, b.bar_us}, {b.bar_su, b.bar_uu}});
  append(c.check, b.interior, false);
  append(c.check, b.stable, false);
  append(c.hat, b.interior, false);
  append(c.hat, b.unstable, false);
  append(c.bar, b.stable, true);
  append(c.bar, b.unstable, true);
  return c;
}

bool verify_d_squared(const ThreeComplexes& c)
{
  return (c.check.d * c.check.d).is_zero() && (c.hat.d * c.hat.d).is_zero() && (c.bar.d * c.bar.d).is_zero();
}

GradedRanks homology(const GradedComplex& c)
{
  if (!(c.d * c.d).is_zero())
    fail(ErrorCode::CompositionNonzero, "differential does not square to zero");
  std::set<std::int64_t> grades(c.grades.begin(), c.grades.end());
  std::map<std::int64_t, std::size_t> rank_from;
  for (std::int64_t g : grades)
    rank_from[g] = f2_rank(c.d.select_cols(indices_at(c, g)));
  GradedRanks out;
  for (std::int64_t g : grades) {
    std::size_t n = indices_at(c, g).size();
    std::size_t in = rank_from.count(g + 1) ? rank_from[g + 1] : 0;
    std::size_t h = n - rank_from[g] - in;
    if (h > 0)
      out[g] = h;
  }
  return out;
}

GradedRanks homology(const ThreeComplexes& c, Flavor flavor) { return homology(c.get(flavor)); }

LesMaps les_maps(const BlockDifferentials& b)
{
  validate_shapes(b);
  const std::size_t no = b.interior.size(), ns = b.stable.size(), nu = b.unstable.size();
  LesMaps m;
  m.i = F2Matrix::block({{F2Matrix(no, ns), b.uo}, {F2Matrix::identity(ns), b.us}});
  m.j = F2Matrix::block({{F2Matrix::identity(no), F2Matrix(no, ns)}, {F2Matrix(nu, no), b.bar_su}});
  m.p = F2Matrix::block({{b.os, b.us}, {F2Matrix(nu, no), F2Matrix::identity(nu)}});
  return m;
}

bool chain_map_identities_hold(const ThreeComplexes& c, const LesMaps& m)
{
  return m.i * c.bar.d == c.check.d * m.i && m.j * c.check.d == c.hat.d * m.j && m.p * c.hat.d == c.bar.d * m.p;
}

LesReport les_exactness(const ThreeComplexes& c, const LesMaps& m,
                        std::optional<std::pair<std::int64_t, std::int64_t>> window)
{
  LesReport rep;
  std::set<std::int64_t> all;
  for (const auto* gc : {&c.check, &c.hat, &c.bar})
    all.insert(gc->grades.begin(), gc->grades.end());
  if (window) {
    rep.g_min = window->first;
    rep.g_max = window->second;
  } else if (!all.empty()) {
    rep.g_min = *all.begin();
    rep.g_max = *all.rbegin();
  }
  for (std::int64_t j = rep.g_min + 1; j < rep.g_max; ++j) {
    if (!exact_at(c.bar, j, m.i, c.check, j, m.j, c.hat, j))
      rep.failures.emplace_back(j, "check");
    if (!exact_at(c.check, j, m.j, c.hat, j, m.p, c.bar, j - 1))
      rep.failures.emplace_back(j, "hat");
    if (!exact_at(c.hat, j + 1, m.p, c.bar, j, m.i, c.check, j))
      rep.failures.emplace_back(j, "bar");
  }
  rep.exact = rep.failures.empty();
  return rep;
}

bool verify_les_exact(const ThreeComplexes& c, const LesMaps& maps) { return les_exactness(c, maps).exact; }

std::size_t total_rank(const GradedRanks& r)
{
  std::size_t n = 0;
  for (const auto& [g, k] : r)
    n += k;
  return n;
}

}
