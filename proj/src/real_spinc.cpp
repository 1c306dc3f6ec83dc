#include "hmrkit/real_spinc.hpp"

#include "hmrkit/error.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

namespace hmrkit {

namespace {

std::string cell_name(std::size_t d, std::size_t c) { return "(" + std::to_string(d) + "," + std::to_string(c) + ")"; }

struct OrbitTable {
  std::vector<std::vector<OrbitEntry>> by_cell;
  std::vector<std::vector<std::size_t>> partner;
};

OrbitTable orbit_table(const EquivariantCWData& data)
{
  const std::size_t D = data.cells_M.size();
  OrbitTable t;
  t.by_cell.resize(D);
  t.partner.resize(D);
  std::vector<std::vector<bool>> seen(D);
  for (std::size_t d = 0; d < D; ++d) {
    t.by_cell[d].resize(data.cells_M[d]);
    seen[d].assign(data.cells_M[d], false);
  }
  for (const auto& e : data.orbit) {
    if (e.degree >= D || e.cell >= data.cells_M[e.degree])
      fail(ErrorCode::MalformedOrbitMap, "orbit entry for nonexistent cell " + cell_name(e.degree, e.cell));
    if (seen[e.degree][e.cell])
      fail(ErrorCode::MalformedOrbitMap, "cell " + cell_name(e.degree, e.cell) + " listed twice");
    if (e.image >= data.cells_Q[e.degree])
      fail(ErrorCode::MalformedOrbitMap, "cell " + cell_name(e.degree, e.cell) + " maps outside the quotient");
    if (e.sign != 1 && e.sign != -1)
      fail(ErrorCode::MalformedOrbitMap, "orientation sign must be +1 or -1");
    seen[e.degree][e.cell] = true;
    t.by_cell[e.degree][e.cell] = e;
  }
  for (std::size_t d = 0; d < D; ++d) {
    for (std::size_t c = 0; c < data.cells_M[d]; ++c)
      if (!seen[d][c])
        fail(ErrorCode::MalformedOrbitMap, "cell " + cell_name(d, c) + " has no orbit entry");
    std::vector<std::vector<std::size_t>> pre(data.cells_Q[d]);
    for (std::size_t c = 0; c < data.cells_M[d]; ++c)
      pre[t.by_cell[d][c].image].push_back(c);
    t.partner[d].assign(data.cells_M[d], 0);
    for (std::size_t q = 0; q < data.cells_Q[d]; ++q) {
      const auto& p = pre[q];
      if (p.size() == 1 && t.by_cell[d][p[0]].fixed) {
        t.partner[d][p[0]] = p[0];
      } else if (p.size() == 2 && !t.by_cell[d][p[0]].fixed && !t.by_cell[d][p[1]].fixed) {
        t.partner[d][p[0]] = p[1];
        t.partner[d][p[1]] = p[0];
      } else {
        fail(ErrorCode::MalformedOrbitMap, "quotient cell " + cell_name(d, q) +
                                               " is not the image of one fixed cell or two free cells");
      }
    }
  }
  return t;
}

void validate_complex(const std::vector<std::size_t>& cells, const std::vector<IntMatrix>& delta, const char* which)
{
  if (delta.size() + 1 != cells.size() && !(cells.empty() && delta.empty()))
    fail(ErrorCode::ShapeMismatch, std::string("delta_") + which + " must have one matrix per degree below the top");
  for (std::size_t k = 0; k < delta.size(); ++k)
    if (delta[k].rows() != cells[k + 1] || delta[k].cols() != cells[k])
      fail(ErrorCode::ShapeMismatch, std::string("delta_") + which + "[" + std::to_string(k) + "] has the wrong shape");
  for (std::size_t k = 0; k + 1 < delta.size(); ++k)
    if (!(delta[k + 1] * delta[k]).is_zero())
      fail(ErrorCode::InvalidArgument, std::string("delta_") + which + " does not square to zero");
}

std::size_t cells_at(const std::vector<std::size_t>& cells, std::size_t n) { return n < cells.size() ? cells[n] : 0; }

IntMatrix diagonal(const std::vector<Integer>& d)
{
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    m(i, i) = d[i];
  return m;
}

// Lattice of x in Z^a with T x = 0 in the target group Z^b / diag(tinv).
IntMatrix kernel_lattice(const IntMatrix& T, const std::vector<Integer>& tinv, std::size_t a)
{
  if (T.rows() == 0)
    return IntMatrix::identity(a);
  IntMatrix N = T.hcat(IntMatrix(T.rows(), T.rows()) - diagonal(tinv));
  IntMatrix K = integer_kernel_basis(N);
  IntMatrix P(a, K.cols());
  for (std::size_t r = 0; r < a; ++r)
    for (std::size_t c = 0; c < K.cols(); ++c)
      P(r, c) = K(r, c);
  return lattice_basis(P);
}

std::vector<Integer> quotient_invariants(const IntMatrix& L, const std::vector<IntVector>& sub)
{
  if (L.cols() == 0)
    return {};
  LatticeSolver solver(L);
  std::vector<IntVector> coords;
  for (const auto& v : sub)
    coords.push_back(solver.solve_or_throw(v));
  return cokernel_invariants(IntMatrix::from_columns(L.cols(), coords));
}

std::vector<Integer> canonical(const std::vector<Integer>& factors)
{
  return cokernel_invariants(diagonal(factors));
}

void check_chain_map(const EquivariantCWData& data)
{
  for (std::size_t k = 0; k + 1 < data.cells_M.size(); ++k) {
    IntMatrix lhs = coboundary(data.cells_Q, data.delta_Q, k) * theta_on_cochains(data, k);
    IntMatrix rhs = theta_on_cochains(data, k + 1) * coboundary(data.cells_M, data.delta_M, k);
    if (!(lhs == rhs))
      fail(ErrorCode::NotChainMap, "Theta does not commute with the coboundary in degree " + std::to_string(k));
  }
}

}

void validate(const EquivariantCWData& data)
{
  if (data.cells_M.size() != data.cells_Q.size())
    fail(ErrorCode::ShapeMismatch, "M and M/iota have different dimensions");
  validate_complex(data.cells_M, data.delta_M, "M");
  validate_complex(data.cells_Q, data.delta_Q, "Q");
  orbit_table(data);
}

bool has_fixed_cells(const EquivariantCWData& data)
{
  return std::any_of(data.orbit.begin(), data.orbit.end(), [](const OrbitEntry& e) { return e.fixed; });
}

IntMatrix coboundary(const std::vector<std::size_t>& cells, const std::vector<IntMatrix>& delta, std::size_t n)
{
  if (n < delta.size())
    return delta[n];
  return IntMatrix(cells_at(cells, n + 1), cells_at(cells, n));
}

IntMatrix theta_on_cochains(const EquivariantCWData& data, std::size_t n)
{
  validate(data);
  OrbitTable t = orbit_table(data);
  IntMatrix m(cells_at(data.cells_Q, n), cells_at(data.cells_M, n));
  if (n >= data.cells_M.size())
    return m;
  for (const auto& e : t.by_cell[n])
    m(e.image, e.cell) = e.sign * (e.fixed ? 2 : 1);
  return m;
}

IntMatrix pi_star_on_cochains(const EquivariantCWData& data, std::size_t n)
{
  validate(data);
  OrbitTable t = orbit_table(data);
  IntMatrix m(cells_at(data.cells_M, n), cells_at(data.cells_Q, n));
  if (n < data.cells_M.size())
    for (const auto& e : t.by_cell[n])
      m(e.cell, e.image) = e.sign;
  return m;
}

IntMatrix iota_star_on_cochains(const EquivariantCWData& data, std::size_t n)
{
  validate(data);
  OrbitTable t = orbit_table(data);
  IntMatrix m(cells_at(data.cells_M, n), cells_at(data.cells_M, n));
  if (n < data.cells_M.size())
    for (const auto& e : t.by_cell[n]) {
      std::size_t p = t.partner[n][e.cell];
      m(e.cell, p) = e.sign * t.by_cell[n][p].sign;
    }
  return m;
}

CohomologyGroup::CohomologyGroup(const std::vector<std::size_t>& cells, const std::vector<IntMatrix>& delta,
                                 std::size_t n)
    : degree_(n), cochain_dim_(cells_at(cells, n))
{
  IntMatrix d_in = n == 0 ? IntMatrix(cochain_dim_, 0) : coboundary(cells, delta, n - 1);
  delta_out_ = coboundary(cells, delta, n);
  cocycle_basis_ = integer_kernel_basis(delta_out_);
  const std::size_t k = cocycle_basis_.cols();
  if (k > 0)
    cocycles_.emplace(cocycle_basis_);
  std::vector<IntVector> rel;
  if (cocycles_)
    for (std::size_t c = 0; c < d_in.cols(); ++c)
      rel.push_back(cocycles_->solve_or_throw(d_in.column(c)));
  IntMatrix X = IntMatrix::from_columns(k, rel);
  SNFResult s = smith_normal_form(X);
  U_ = s.U;
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < k; ++i) {
    Integer inv = i < s.rank ? s.D(i, i) : Integer(0);
    if (inv == 1)
      continue;
    kept_.push_back(i);
    invariants_.push_back(inv);
    gens.push_back(cocycle_basis_.apply(s.U_inv.column(i)));
  }
  generators_ = IntMatrix::from_columns(cochain_dim_, gens);
}

bool CohomologyGroup::is_cocycle(const IntVector& v) const
{
  if (v.size() != cochain_dim_)
    return false;
  IntVector dv = delta_out_.apply(v);
  return std::all_of(dv.begin(), dv.end(), [](const Integer& x) { return x == 0; });
}

IntVector CohomologyGroup::coordinates(const IntVector& cocycle) const
{
  if (cocycle.size() != cochain_dim_)
    fail(ErrorCode::ShapeMismatch, "cochain has the wrong length");
  if (!is_cocycle(cocycle))
    fail(ErrorCode::NotCocycle, "cochain is not a cocycle");
  IntVector out(kept_.size());
  if (!cocycles_)
    return out;
  IntVector y = U_.apply(cocycles_->solve_or_throw(cocycle));
  for (std::size_t j = 0; j < kept_.size(); ++j) {
    Integer v = y[kept_[j]];
    if (invariants_[j] > 0) {
      v %= invariants_[j];
      if (v < 0)
        v += invariants_[j];
    }
    out[j] = v;
  }
  return out;
}

CohomologyMap theta_on_cohomology(const EquivariantCWData& data, std::size_t n)
{
  validate(data);
  check_chain_map(data);
  CohomologyMap m{CohomologyGroup(data.cells_M, data.delta_M, n), CohomologyGroup(data.cells_Q, data.delta_Q, n), {}};
  IntMatrix theta = theta_on_cochains(data, n);
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < m.source.generator_count(); ++j)
    cols.push_back(m.target.coordinates(theta.apply(m.source.generator(j))));
  m.matrix = IntMatrix::from_columns(m.target.generator_count(), cols);
  return m;
}

CohomologyMap iota_on_cohomology(const EquivariantCWData& data, std::size_t n)
{
  validate(data);
  CohomologyGroup h(data.cells_M, data.delta_M, n);
  CohomologyMap m{h, h, {}};
  IntMatrix iota = iota_star_on_cochains(data, n);
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < h.generator_count(); ++j)
    cols.push_back(h.coordinates(iota.apply(h.generator(j))));
  m.matrix = IntMatrix::from_columns(h.generator_count(), cols);
  return m;
}

std::vector<Integer> kernel_invariants(const CohomologyMap& map)
{
  const std::size_t a = map.source.generator_count();
  IntMatrix L = kernel_lattice(map.matrix, map.target.invariants(), a);
  std::vector<IntVector> rel;
  for (std::size_t i = 0; i < a; ++i)
    if (map.source.invariants()[i] > 0) {
      IntVector v(a);
      v[i] = map.source.invariants()[i];
      rel.push_back(v);
    }
  return quotient_invariants(L, rel);
}

std::vector<Integer> cokernel_invariants(const CohomologyMap& map)
{
  const std::size_t b = map.target.generator_count();
  if (b == 0)
    return {};
  return cokernel_invariants(diagonal(map.target.invariants()).hcat(map.matrix));
}

bool admits_real_structure(const EquivariantCWData& data, const IntVector& c1)
{
  validate(data);
  check_chain_map(data);
  CohomologyGroup hm(data.cells_M, data.delta_M, 2);
  if (c1.size() != hm.cochain_dim())
    fail(ErrorCode::ShapeMismatch, "c1 must assign a value to every 2-cell of M");
  if (!hm.is_cocycle(c1))
    fail(ErrorCode::NotCocycle, "c1 is not a cocycle");
  CohomologyGroup hq(data.cells_Q, data.delta_Q, 2);
  IntVector image = hq.coordinates(theta_on_cochains(data, 2).apply(c1));
  return std::all_of(image.begin(), image.end(), [](const Integer& x) { return x == 0; });
}

std::vector<Integer> real_structure_classes(const EquivariantCWData& data)
{
  return cokernel_invariants(theta_on_cohomology(data, 1));
}

std::vector<Integer> invariant_quotient(const EquivariantCWData& data)
{
  CohomologyMap iota = iota_on_cohomology(data, 1);
  const std::size_t a = iota.source.generator_count();
  IntMatrix minus_one = iota.matrix - IntMatrix::identity(a);
  IntMatrix L = kernel_lattice(minus_one, iota.source.invariants(), a);
  std::vector<IntVector> sub;
  IntMatrix plus_one = iota.matrix + IntMatrix::identity(a);
  for (std::size_t j = 0; j < a; ++j)
    sub.push_back(plus_one.column(j));
  for (std::size_t i = 0; i < a; ++i)
    if (iota.source.invariants()[i] > 0) {
      IntVector v(a);
      v[i] = iota.source.invariants()[i];
      sub.push_back(v);
    }
  return quotient_invariants(L, sub);
}

RealStructureCensus real_spinc_torsor(const EquivariantCWData& data, const std::optional<IntVector>& c1,
                                      bool assume_exists)
{
  validate(data);
  if (!has_fixed_cells(data))
    fail(ErrorCode::InvalidArgument, "free involutions are not supported");
  RealStructureCensus c;
  c.exists = c1 ? admits_real_structure(data, *c1) : assume_exists;
  if (!c.exists)
    fail(ErrorCode::NoRealStructure, "no real structure on the given line bundle");
  c.ker_theta = kernel_invariants(theta_on_cohomology(data, 2));
  c.h1_quotient = invariant_quotient(data);
  c.h1_quotient_via_theta = real_structure_classes(data);
  c.routes_agree = canonical(c.h1_quotient) == canonical(c.h1_quotient_via_theta);
  std::vector<Integer> all = c.ker_theta;
  all.insert(all.end(), c.h1_quotient.begin(), c.h1_quotient.end());
  c.torsor = canonical(all);
  c.size = 1;
  for (const auto& x : c.torsor) {
    if (x == 0)
      c.finite = false;
    else
      c.torsion_size *= x;
  }
  c.size = c.finite ? c.torsion_size : Integer(0);
  return c;
}

BranchedCoverInvariants branched_cover_invariants(const IntMatrix& A)
{
  if (A.rows() != A.cols())
    fail(ErrorCode::ShapeMismatch, "Seifert matrix must be square");
  BranchedCoverInvariants r;
  r.h1_invariants = cokernel_invariants(A + A.transpose());
  r.order = 1;
  for (const auto& x : r.h1_invariants) {
    if (x == 0)
      ++r.b1;
    r.order *= x;
  }
  return r;
}

EquivariantCWData cw_data_from_action(const EquivariantComplex& X, const std::vector<std::size_t>& h_generators,
                                      std::size_t iota_generator)
{
  std::vector<CellAction> hg;
  for (std::size_t g : h_generators)
    hg.push_back(X.actions.at(g));
  CellQuotient qm = quotient(X.X, group_closure(X.X, hg));
  CellQuotient qq = quotient(X.X, group_closure(X.X, X.actions));
  EquivariantCWData data;
  data.cells_M = qm.cells;
  data.cells_Q = qq.cells;
  for (const auto& b : qm.boundary)
    data.delta_M.push_back(b.transpose());
  for (const auto& b : qq.boundary)
    data.delta_Q.push_back(b.transpose());
  const CellAction& iota = X.actions.at(iota_generator);
  for (std::size_t d = 0; d < qm.cells.size(); ++d)
    for (std::size_t m = 0; m < qm.cells[d]; ++m) {
      const std::size_t rho = qm.representative[d][m];
      const SignedCell im = iota[d][rho];
      OrbitEntry e;
      e.degree = d;
      e.cell = m;
      e.image = qq.rep_of[d][rho];
      e.sign = qq.sign_of[d][rho];
      e.fixed = qm.rep_of[d][im.cell] == m;
      if (e.fixed && im.sign * qm.sign_of[d][im.cell] != 1)
        fail(ErrorCode::InvalidArgument, "the involution reverses a cell it preserves");
      data.orbit.push_back(e);
    }
  validate(data);
  return data;
}

namespace {

EquivariantComplex lens_complex(long p, long q, std::size_t m)
{
  const auto N = static_cast<std::size_t>(2 * p) * m;
  const long step = static_cast<long>(2 * m);
  auto a = circle_complex(N, {{step, false}, {0, true}});
  auto b = circle_complex(N, {{step * q, false}, {0, true}});
  return join(a, b);
}

}

EquivariantCWData builtin_cw_fixture(const std::string& full)
{
  std::string name = full;
  std::size_t m = 1;
  const std::string fine = "-fine";
  if (name.size() > fine.size() && name.compare(name.size() - fine.size(), fine.size(), fine) == 0) {
    m = 2;
    name.resize(name.size() - fine.size());
  }
  const long mm = static_cast<long>(m);
  if (name == "point-pair")
    return cw_data_from_action(s0_complex({true}), {}, 0);
  if (name == "point-fixed")
    return cw_data_from_action(point_complex(1), {}, 0);
  if (name == "circle-reflection")
    return cw_data_from_action(circle_complex(2 * m, {{0, true}}), {}, 0);
  if (name == "circle-rotation")
    return cw_data_from_action(circle_complex(2 * m, {{mm, false}}), {}, 0);
  if (name == "s3-conjugation")
    return cw_data_from_action(lens_complex(1, 0, m), {0}, 1);
  if (name == "s1xs2-rotation")
    return cw_data_from_action(
        product(circle_complex(m, {{0, false}}), join(s0_complex({false}), circle_complex(2 * m, {{mm, false}}))), {},
        0);
  if (name == "s1xs2-unlink")
    return cw_data_from_action(
        product(circle_complex(2 * m, {{0, true}}), join(s0_complex({true}), circle_complex(m, {{0, false}}))), {}, 0);
  if (name == "t2-hyperelliptic")
    return cw_data_from_action(product(circle_complex(2 * m, {{0, true}}), circle_complex(2 * m, {{0, true}})), {}, 0);
  if (name.rfind("lens-", 0) == 0) {
    long p = 0, q = 0;
    char tail = 0;
    if (std::sscanf(name.c_str(), "lens-%ld-%ld%c", &p, &q, &tail) != 2 || p < 2 || q < 1 || q >= p)
      fail(ErrorCode::InvalidArgument, "lens fixture must be named lens-P-Q with 1 <= Q < P");
    if (std::gcd(p, q) != 1)
      fail(ErrorCode::NotCoprime, "lens fixture parameters are not coprime");
    return cw_data_from_action(lens_complex(p, q, m), {0}, 1);
  }
  fail(ErrorCode::InvalidArgument, "unknown CW fixture " + full);
}

std::vector<std::string> builtin_cw_fixtures()
{
  std::vector<std::string> names{"point-pair",        "point-fixed",         "circle-reflection",
                                 "circle-rotation",   "s3-conjugation",      "s3-conjugation-fine",
                                 "s1xs2-rotation",    "s1xs2-rotation-fine", "s1xs2-unlink",
                                 "s1xs2-unlink-fine", "t2-hyperelliptic",    "t2-hyperelliptic-fine"};
  for (long p = 2; p <= 7; ++p)
    for (long q = 1; q < p; ++q)
      if (std::gcd(p, q) == 1)
        names.push_back("lens-" + std::to_string(p) + "-" + std::to_string(q));
  names.push_back("lens-3-1-fine");
  names.push_back("lens-5-2-fine");
  return names;
}

}
