#include "hmrkit/morse_blowup.hpp"

#include "hmrkit/error.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace hmrkit {

LinearFlowModel::LinearFlowModel(const Eigen::MatrixXd& L, double tolerance) : L_(L), tol_(tolerance)
{
  if (L.rows() != L.cols())
    fail(ErrorCode::ShapeMismatch, "fiber matrix is not square");
  if (L.rows() == 0)
    fail(ErrorCode::InvalidArgument, "fiber matrix is empty");
  if (!(tolerance > 0))
    fail(ErrorCode::InvalidArgument, "tolerance must be positive");
  const double scale = std::max(1.0, L.cwiseAbs().maxCoeff());
  if ((L - L.transpose()).cwiseAbs().maxCoeff() > tol_ * scale)
    fail(ErrorCode::InvalidArgument, "fiber matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (L + L.transpose()));
  if (es.info() != Eigen::Success)
    fail(ErrorCode::DegenerateSpectrum, "eigensolver did not converge");
  values_ = es.eigenvalues();
  vectors_ = es.eigenvectors();

  const Eigen::Index n = L.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::VectorXd v = vectors_.col(k);
    for (Eigen::Index j = 0; j < k; ++j)
      v -= vectors_.col(j).dot(v) * vectors_.col(j);
    v.normalize();
    for (Eigen::Index r = 0; r < n; ++r)
      if (std::abs(v(r)) > tol_) {
        if (v(r) < 0)
          v = -v;
        break;
      }
    vectors_.col(k) = v;
  }

  const double gap_tol = 10 * tol_ * std::max(1.0, values_.cwiseAbs().maxCoeff());
  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::abs(values_(k)) <= gap_tol)
      fail(ErrorCode::DegenerateSpectrum, "spectrum contains zero");
    if (k + 1 < n && values_(k + 1) - values_(k) <= gap_tol) {
      std::ostringstream os;
      os << "eigenvalues " << values_(k) << " and " << values_(k + 1) << " are not separated";
      fail(ErrorCode::DegenerateSpectrum, os.str());
    }
  }
}

std::size_t LinearFlowModel::negative_count() const
{
  std::size_t m = 0;
  for (Eigen::Index k = 0; k < values_.size(); ++k)
    if (values_(k) < 0)
      ++m;
  return m;
}

double LinearFlowModel::rayleigh(const Eigen::VectorXd& x) const { return x.dot(L_ * x) / x.squaredNorm(); }

LinearFlowModel diagonal_model(const std::vector<double>& spectrum, double tolerance)
{
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(spectrum.size()),
                                            static_cast<Eigen::Index>(spectrum.size()));
  for (std::size_t i = 0; i < spectrum.size(); ++i)
    L(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = spectrum[i];
  return LinearFlowModel(L, tolerance);
}

std::vector<RPCriticalPoint> rp_critical_points(const LinearFlowModel& model)
{
  std::vector<RPCriticalPoint> out;
  for (std::size_t i = 1; i <= model.dim(); ++i)
    out.push_back({i, i - 1, model.eigenvalue(i), model.eigenvector(i)});
  return out;
}

std::string generator_id(const BasePoint& q, std::size_t eigen_index)
{
  return q.label + ".w" + std::to_string(eigen_index);
}

namespace {

std::int64_t formula_grading(const BasePoint& q, std::size_t i)
{
  const auto ii = static_cast<std::int64_t>(i);
  return q.model.eigenvalue(i) > 0 ? q.ind_Q + ii - 1 : q.ind_Q + ii;
}

std::vector<std::string> labels(const BaseMorseData& base)
{
  std::vector<std::string> out;
  for (std::size_t b = 0; b < base.points.size(); ++b)
    out.push_back(base.points[b].label.empty() ? "q" + std::to_string(b) : base.points[b].label);
  return out;
}

Eigen::VectorXd field(const LinearFlowModel& m, const Eigen::VectorXd& phi)
{
  return -(m.L() * phi) + m.rayleigh(phi) * phi;
}

}

std::vector<Generator> blowup_critical_points(const BaseMorseData& base)
{
  auto names = labels(base);
  std::vector<Generator> gens;
  for (std::size_t b = 0; b < base.points.size(); ++b) {
    const BasePoint& q = base.points[b];
    for (std::size_t i = 1; i <= q.model.dim(); ++i) {
      Generator g;
      g.id = names[b] + ".w" + std::to_string(i);
      g.kind = q.model.eigenvalue(i) > 0 ? Kind::Stable : Kind::Unstable;
      g.gr = formula_grading(q, i);
      gens.push_back(g);
    }
  }
  if (base.anchor) {
    std::int64_t shift = 0;
    bool found = false;
    for (const auto& g : gens)
      if (g.id == base.anchor->generator_id) {
        shift = base.anchor->grading - g.gr;
        found = true;
      }
    if (!found)
      fail(ErrorCode::InvalidArgument, "grading anchor names unknown generator " + base.anchor->generator_id);
    for (auto& g : gens)
      g.gr += shift;
  }
  return gens;
}

std::size_t adjacent_trajectory_count(const LinearFlowModel& model, std::size_t i, std::size_t j)
{
  if (i < 1 || j < 1 || i > model.dim() || j > model.dim())
    fail(ErrorCode::InvalidArgument, "eigen index out of range");
  if (i != j + 1)
    return 0;
  // The two flow lines of the span of w_i, w_j leaving [w_i].
  return 2;
}

bool adjacent_trajectory_count_mod2(const LinearFlowModel& model, std::size_t i, std::size_t j)
{
  return adjacent_trajectory_count(model, i, j) % 2 == 1;
}

FlowTrajectory integrate_blowup_flow(const LinearFlowModel& model, const Eigen::VectorXd& phi0, double s0,
                                     double t_max, double step, const FlowOptions& opts)
{
  if (static_cast<std::size_t>(phi0.size()) != model.dim())
    fail(ErrorCode::ShapeMismatch, "initial spinor has the wrong dimension");
  if (std::abs(phi0.norm() - 1) > 1e-8)
    fail(ErrorCode::InvalidArgument, "initial spinor is not a unit vector");
  if (!(s0 >= 0))
    fail(ErrorCode::InvalidArgument, "s0 must be nonnegative");
  if (!(step > 0) || !(t_max >= 0))
    fail(ErrorCode::InvalidArgument, "step must be positive and t_max nonnegative");

  FlowTrajectory tr;
  const double coeff_tol = 10 * model.tolerance() * std::max(1.0, model.L().cwiseAbs().maxCoeff());
  for (std::size_t k = 1; k <= model.dim(); ++k)
    if (std::abs(phi0.dot(model.eigenvector(k))) > std::max(coeff_tol, 1e-9)) {
      tr.limit_index = k;
      tr.limit_eigenvalue = model.eigenvalue(k);
      break;
    }

  Eigen::VectorXd phi = phi0;
  double s = s0, t = 0;
  auto record = [&] {
    tr.t.push_back(t);
    tr.phi.push_back(phi);
    tr.s.push_back(s);
    tr.lambda.push_back(model.rayleigh(phi));
  };
  record();

  const auto steps = static_cast<std::size_t>(std::ceil(t_max / step - 1e-9));
  std::size_t quiet = 0;
  for (std::size_t n = 0; n < steps; ++n) {
    const double h = std::min(step, t_max - t);
    auto sdot = [&](const Eigen::VectorXd& p, double sv) { return -model.rayleigh(p) * sv; };
    Eigen::VectorXd k1 = field(model, phi);
    double l1 = sdot(phi, s);
    Eigen::VectorXd p2 = phi + 0.5 * h * k1;
    Eigen::VectorXd k2 = field(model, p2);
    double l2 = sdot(p2, s + 0.5 * h * l1);
    Eigen::VectorXd p3 = phi + 0.5 * h * k2;
    Eigen::VectorXd k3 = field(model, p3);
    double l3 = sdot(p3, s + 0.5 * h * l2);
    Eigen::VectorXd p4 = phi + h * k3;
    Eigen::VectorXd k4 = field(model, p4);
    double l4 = sdot(p4, s + h * l3);
    phi += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    s += h / 6 * (l1 + 2 * l2 + 2 * l3 + l4);
    t += h;

    const double drift = std::abs(phi.norm() - 1);
    if (drift > opts.drift_tolerance) {
      std::ostringstream os;
      os << "norm drift " << drift << " at t=" << t << " exceeds " << opts.drift_tolerance;
      fail(ErrorCode::StepTooLarge, os.str());
    }
    phi.normalize();
    if (s0 == 0)
      s = 0;
    tr.max_norm_defect = std::max(tr.max_norm_defect, std::abs(phi.norm() - 1));
    record();

    quiet = field(model, phi).norm() < opts.stationary_threshold ? quiet + 1 : 0;
    if (quiet >= opts.stationary_steps) {
      tr.converged = true;
      break;
    }
  }
  return tr;
}

std::pair<Eigen::VectorXd, double> closed_form_state(const LinearFlowModel& model, const Eigen::VectorXd& phi0,
                                                     double s0, double t)
{
  const std::size_t n = model.dim();
  Eigen::VectorXd c = model.eigenvectors().transpose() * phi0;
  double ref = 0;
  bool have_ref = false;
  for (std::size_t k = 0; k < n; ++k)
    if (c(static_cast<Eigen::Index>(k)) != 0) {
      ref = model.eigenvalues()(static_cast<Eigen::Index>(k));
      have_ref = true;
      break;
    }
  if (!have_ref)
    fail(ErrorCode::InvalidArgument, "initial spinor is zero");
  Eigen::VectorXd y(static_cast<Eigen::Index>(n));
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(n); ++k)
    y(k) = c(k) * std::exp(-(model.eigenvalues()(k) - ref) * t);
  const double norm = y.norm();
  Eigen::VectorXd x = model.eigenvectors() * (y / norm);
  return {x, s0 * norm * std::exp(-ref * t)};
}

BlockDifferentials build_model_complexes(const BaseMorseData& base)
{
  auto gens = blowup_critical_points(base);
  const std::size_t nb = base.points.size();
  BlockDifferentials b;
  // (base point, eigen index) -> position within its kind list
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pos;
  std::size_t g = 0;
  for (std::size_t q = 0; q < nb; ++q)
    for (std::size_t i = 1; i <= base.points[q].model.dim(); ++i, ++g) {
      auto& list = gens[g].kind == Kind::Stable ? b.stable : b.unstable;
      pos[{q, i}] = list.size();
      list.push_back(gens[g]);
    }
  b.reset_blocks();
  if (!base.counts)
    return b;

  const F2Matrix& c = *base.counts;
  if (c.rows() != nb || c.cols() != nb)
    fail(ErrorCode::ShapeMismatch, "base counts must be a square matrix over the base points");
  if (!(c * c).is_zero())
    fail(ErrorCode::CompositionNonzero, "base differential does not square to zero");
  for (auto [tgt, src] : c.positions()) {
    const BasePoint& a = base.points[src];
    const BasePoint& z = base.points[tgt];
    if (a.ind_Q - z.ind_Q != 1)
      fail(ErrorCode::GradingViolation, "base count between points whose indices do not differ by 1");
    if (a.model.dim() != z.model.dim())
      fail(ErrorCode::ShapeMismatch, "base count between fibers of different dimension");
    if (a.model.negative_count() != z.model.negative_count())
      fail(ErrorCode::GradingViolation, "base count between fibers with different spectral signs");
    for (std::size_t i = 1; i <= a.model.dim(); ++i) {
      std::size_t r = pos.at({tgt, i}), s = pos.at({src, i});
      if (a.model.eigenvalue(i) > 0)
        b.bar_ss.flip(r, s);
      else
        b.bar_uu.flip(r, s);
    }
  }
  return b;
}

BaseMorseData s3_tower_model(std::size_t positive, std::size_t negative)
{
  return torus_tower_model(0, positive, negative);
}

BaseMorseData torus_tower_model(std::size_t b1, std::size_t positive, std::size_t negative)
{
  if (positive == 0)
    fail(ErrorCode::InvalidArgument, "tower model needs a positive eigenvalue");
  std::vector<double> spectrum;
  for (std::size_t k = negative; k >= 1; --k)
    spectrum.push_back(-static_cast<double>(k));
  for (std::size_t k = 1; k <= positive; ++k)
    spectrum.push_back(static_cast<double>(k));
  LinearFlowModel model = diagonal_model(spectrum);
  BaseMorseData base;
  for (std::size_t mask = 0; mask < (std::size_t(1) << b1); ++mask)
    base.points.push_back({"q" + std::to_string(mask), static_cast<std::int64_t>(__builtin_popcountll(mask)), model});
  base.counts = F2Matrix(base.points.size(), base.points.size());
  base.anchor = GradingAnchor{generator_id(base.points[0], negative + 1), 0};
  return base;
}

}
