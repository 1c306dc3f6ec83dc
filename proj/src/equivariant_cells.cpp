#include "hmrkit/equivariant_cells.hpp"

#include "hmrkit/error.hpp"

#include <map>
#include <tuple>

namespace hmrkit {

namespace {

CellAction identity_action(const CellComplex& X)
{
  CellAction a(X.cells.size());
  for (std::size_t d = 0; d < X.cells.size(); ++d)
    for (std::size_t c = 0; c < X.cells[d]; ++c)
      a[d].push_back({c, 1});
  return a;
}

// (f o g)(c) = f(g(c))
CellAction compose(const CellAction& f, const CellAction& g)
{
  CellAction out(g.size());
  for (std::size_t d = 0; d < g.size(); ++d)
    for (const auto& im : g[d]) {
      const auto& im2 = f[d][im.cell];
      out[d].push_back({im2.cell, im.sign * im2.sign});
    }
  return out;
}

std::vector<std::pair<std::size_t, int>> flatten(const CellAction& a)
{
  std::vector<std::pair<std::size_t, int>> v;
  for (const auto& d : a)
    for (const auto& s : d)
      v.emplace_back(s.cell, s.sign);
  return v;
}

std::size_t dims_of(const EquivariantComplex& a) { return a.X.cells.size(); }

Integer boundary_entry(const CellComplex& X, std::size_t d, std::size_t face, std::size_t cell)
{
  return X.boundary[d - 1](face, cell);
}

void check_generators(const EquivariantComplex& a, const EquivariantComplex& b)
{
  if (a.actions.size() != b.actions.size())
    fail(ErrorCode::InvalidArgument, "factors carry different numbers of group generators");
}

}

EquivariantComplex point_complex(std::size_t generators)
{
  EquivariantComplex e;
  e.X.cells = {1};
  for (std::size_t g = 0; g < generators; ++g)
    e.actions.push_back(identity_action(e.X));
  return e;
}

EquivariantComplex s0_complex(const std::vector<bool>& swaps)
{
  EquivariantComplex e;
  e.X.cells = {2};
  for (bool s : swaps)
    e.actions.push_back({{{s ? 1u : 0u, 1}, {s ? 0u : 1u, 1}}});
  return e;
}

EquivariantComplex circle_complex(std::size_t N, const std::vector<CircleMap>& maps)
{
  if (N == 0)
    fail(ErrorCode::InvalidArgument, "circle needs a vertex");
  EquivariantComplex e;
  e.X.cells = {N, N};
  // edge k runs from v_k to v_{k+1}
  IntMatrix b(N, N);
  for (std::size_t k = 0; k < N; ++k) {
    b((k + 1) % N, k) += 1;
    b(k, k) -= 1;
  }
  e.X.boundary = {b};
  const long n = static_cast<long>(N);
  auto mod = [n](long x) { return static_cast<std::size_t>(((x % n) + n) % n); };
  for (const auto& m : maps) {
    CellAction a(2);
    for (long k = 0; k < n; ++k) {
      if (m.reflect) {
        a[0].push_back({mod(-k + m.rotation), 1});
        a[1].push_back({mod(-k - 1 + m.rotation), -1});
      } else {
        a[0].push_back({mod(k + m.rotation), 1});
        a[1].push_back({mod(k + m.rotation), 1});
      }
    }
    e.actions.push_back(a);
  }
  return e;
}

EquivariantComplex join(const EquivariantComplex& A, const EquivariantComplex& B)
{
  check_generators(A, B);
  const std::size_t da = dims_of(A), db = dims_of(B);
  const std::size_t top = (da ? da - 1 : 0) + (db ? db - 1 : 0) + 1;
  // key: (kind, deg_a, idx_a, deg_b, idx_b); kind 0 = A cell, 1 = B cell, 2 = join cell
  using Key = std::tuple<int, std::size_t, std::size_t, std::size_t, std::size_t>;
  std::vector<std::vector<Key>> keys(top + 1);
  std::map<Key, std::size_t> index;
  auto add = [&](std::size_t d, Key k) {
    index[k] = keys[d].size();
    keys[d].push_back(k);
  };
  for (std::size_t d = 0; d < da; ++d)
    for (std::size_t i = 0; i < A.X.cells[d]; ++i)
      add(d, {0, d, i, 0, 0});
  for (std::size_t d = 0; d < db; ++d)
    for (std::size_t i = 0; i < B.X.cells[d]; ++i)
      add(d, {1, 0, 0, d, i});
  for (std::size_t p = 0; p < da; ++p)
    for (std::size_t i = 0; i < A.X.cells[p]; ++i)
      for (std::size_t q = 0; q < db; ++q)
        for (std::size_t j = 0; j < B.X.cells[q]; ++j)
          add(p + q + 1, {2, p, i, q, j});
  while (!keys.empty() && keys.back().empty())
    keys.pop_back();

  EquivariantComplex J;
  for (const auto& k : keys)
    J.X.cells.push_back(k.size());
  for (std::size_t d = 1; d < keys.size(); ++d) {
    IntMatrix m(keys[d - 1].size(), keys[d].size());
    for (std::size_t c = 0; c < keys[d].size(); ++c) {
      auto [kind, p, i, q, j] = keys[d][c];
      if (kind == 0) {
        for (std::size_t f = 0; f < A.X.cells[p - 1]; ++f)
          m(index.at({0, p - 1, f, 0, 0}), c) += boundary_entry(A.X, p, f, i);
      } else if (kind == 1) {
        for (std::size_t f = 0; f < B.X.cells[q - 1]; ++f)
          m(index.at({1, 0, 0, q - 1, f}), c) += boundary_entry(B.X, q, f, j);
      } else {
        // d(a*b) = (da)*b + (-1)^{|a|+1} a*(db), with d(vertex) the empty cell
        if (p == 0)
          m(index.at({1, 0, 0, q, j}), c) += 1;
        else
          for (std::size_t f = 0; f < A.X.cells[p - 1]; ++f)
            m(index.at({2, p - 1, f, q, j}), c) += boundary_entry(A.X, p, f, i);
        const int sgn = (p + 1) % 2 == 0 ? 1 : -1;
        if (q == 0)
          m(index.at({0, p, i, 0, 0}), c) += sgn;
        else
          for (std::size_t f = 0; f < B.X.cells[q - 1]; ++f)
            m(index.at({2, p, i, q - 1, f}), c) += sgn * boundary_entry(B.X, q, f, j);
      }
    }
    J.X.boundary.push_back(m);
  }
  for (std::size_t g = 0; g < A.actions.size(); ++g) {
    CellAction act(keys.size());
    for (std::size_t d = 0; d < keys.size(); ++d)
      for (const auto& k : keys[d]) {
        auto [kind, p, i, q, j] = k;
        if (kind == 0) {
          auto s = A.actions[g][p][i];
          act[d].push_back({index.at({0, p, s.cell, 0, 0}), s.sign});
        } else if (kind == 1) {
          auto s = B.actions[g][q][j];
          act[d].push_back({index.at({1, 0, 0, q, s.cell}), s.sign});
        } else {
          auto sa = A.actions[g][p][i];
          auto sb = B.actions[g][q][j];
          act[d].push_back({index.at({2, p, sa.cell, q, sb.cell}), sa.sign * sb.sign});
        }
      }
    J.actions.push_back(act);
  }
  return J;
}

EquivariantComplex product(const EquivariantComplex& A, const EquivariantComplex& B)
{
  check_generators(A, B);
  const std::size_t da = dims_of(A), db = dims_of(B);
  using Key = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;
  std::vector<std::vector<Key>> keys(da + db - 1);
  std::map<Key, std::size_t> index;
  for (std::size_t p = 0; p < da; ++p)
    for (std::size_t i = 0; i < A.X.cells[p]; ++i)
      for (std::size_t q = 0; q < db; ++q)
        for (std::size_t j = 0; j < B.X.cells[q]; ++j) {
          Key k{p, i, q, j};
          index[k] = keys[p + q].size();
          keys[p + q].push_back(k);
        }
  EquivariantComplex P;
  for (const auto& k : keys)
    P.X.cells.push_back(k.size());
  for (std::size_t d = 1; d < keys.size(); ++d) {
    IntMatrix m(keys[d - 1].size(), keys[d].size());
    for (std::size_t c = 0; c < keys[d].size(); ++c) {
      auto [p, i, q, j] = keys[d][c];
      if (p > 0)
        for (std::size_t f = 0; f < A.X.cells[p - 1]; ++f)
          m(index.at({p - 1, f, q, j}), c) += boundary_entry(A.X, p, f, i);
      const int sgn = p % 2 == 0 ? 1 : -1;
      if (q > 0)
        for (std::size_t f = 0; f < B.X.cells[q - 1]; ++f)
          m(index.at({p, i, q - 1, f}), c) += sgn * boundary_entry(B.X, q, f, j);
    }
    P.X.boundary.push_back(m);
  }
  for (std::size_t g = 0; g < A.actions.size(); ++g) {
    CellAction act(keys.size());
    for (std::size_t d = 0; d < keys.size(); ++d)
      for (const auto& [p, i, q, j] : keys[d]) {
        auto sa = A.actions[g][p][i];
        auto sb = B.actions[g][q][j];
        act[d].push_back({index.at({p, sa.cell, q, sb.cell}), sa.sign * sb.sign});
      }
    P.actions.push_back(act);
  }
  return P;
}

std::vector<CellAction> group_closure(const CellComplex& X, const std::vector<CellAction>& gens)
{
  std::vector<CellAction> elems{identity_action(X)};
  std::map<std::vector<std::pair<std::size_t, int>>, std::size_t> seen{{flatten(elems[0]), 0}};
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (const auto& g : gens) {
      CellAction h = compose(g, elems[k]);
      auto key = flatten(h);
      if (!seen.count(key)) {
        seen[key] = elems.size();
        elems.push_back(h);
      }
    }
  return elems;
}

CellQuotient quotient(const CellComplex& X, const std::vector<CellAction>& group)
{
  const std::size_t D = X.cells.size();
  CellQuotient Q;
  Q.rep_of.resize(D);
  Q.sign_of.resize(D);
  Q.representative.resize(D);
  for (std::size_t d = 0; d < D; ++d) {
    const std::size_t n = X.cells[d];
    std::vector<bool> done(n, false);
    Q.rep_of[d].assign(n, 0);
    Q.sign_of[d].assign(n, 0);
    for (std::size_t c = 0; c < n; ++c) {
      if (done[c])
        continue;
      const std::size_t q = Q.representative[d].size();
      Q.representative[d].push_back(c);
      for (const auto& g : group) {
        SignedCell im = g[d][c];
        if (done[im.cell]) {
          if (Q.rep_of[d][im.cell] != q || Q.sign_of[d][im.cell] != im.sign)
            fail(ErrorCode::InvalidArgument, "a stabilizer reverses the orientation of a cell");
          continue;
        }
        done[im.cell] = true;
        Q.rep_of[d][im.cell] = q;
        Q.sign_of[d][im.cell] = im.sign;
      }
    }
    Q.cells.push_back(Q.representative[d].size());
  }
  for (std::size_t d = 1; d < D; ++d) {
    IntMatrix m(Q.cells[d - 1], Q.cells[d]);
    for (std::size_t qc = 0; qc < Q.cells[d]; ++qc) {
      const std::size_t c = Q.representative[d][qc];
      for (std::size_t f = 0; f < X.cells[d - 1]; ++f) {
        const Integer& x = X.boundary[d - 1](f, c);
        if (x != 0)
          m(Q.rep_of[d - 1][f], qc) += x * Q.sign_of[d - 1][f];
      }
    }
    Q.boundary.push_back(m);
  }
  return Q;
}

bool boundary_squares_to_zero(const CellComplex& X)
{
  for (std::size_t d = 1; d < X.boundary.size(); ++d)
    if (!(X.boundary[d - 1] * X.boundary[d]).is_zero())
      return false;
  return true;
}

}
