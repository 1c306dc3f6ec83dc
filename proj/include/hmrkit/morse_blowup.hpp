#pragma once

#include "hmrkit/complexes.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hmrkit {

class LinearFlowModel {
public:
  explicit LinearFlowModel(const Eigen::MatrixXd& L, double tolerance = 1e-10);

  std::size_t dim() const { return static_cast<std::size_t>(L_.rows()); }
  const Eigen::MatrixXd& L() const { return L_; }
  double tolerance() const { return tol_; }
  // Ascending; eigenvector k is column k, first nonzero coordinate positive.
  const Eigen::VectorXd& eigenvalues() const { return values_; }
  const Eigen::MatrixXd& eigenvectors() const { return vectors_; }
  double eigenvalue(std::size_t i) const { return values_(static_cast<Eigen::Index>(i - 1)); }
  Eigen::VectorXd eigenvector(std::size_t i) const { return vectors_.col(static_cast<Eigen::Index>(i - 1)); }
  std::size_t negative_count() const;
  double rayleigh(const Eigen::VectorXd& x) const;

private:
  Eigen::MatrixXd L_;
  double tol_;
  Eigen::VectorXd values_;
  Eigen::MatrixXd vectors_;
};

LinearFlowModel diagonal_model(const std::vector<double>& spectrum, double tolerance = 1e-10);

struct RPCriticalPoint {
  std::size_t eigen_index = 0; // 1-based
  std::size_t morse_index = 0;
  double eigenvalue = 0;
  Eigen::VectorXd vector;
};

std::vector<RPCriticalPoint> rp_critical_points(const LinearFlowModel& model);

struct BasePoint {
  std::string label;
  std::int64_t ind_Q = 0;
  LinearFlowModel model;
};

struct GradingAnchor {
  std::string generator_id;
  std::int64_t grading = 0;
};

struct BaseMorseData {
  std::vector<BasePoint> points;
  // Base trajectory counts, entry (target, source); absent means zero.
  std::optional<F2Matrix> counts;
  std::optional<GradingAnchor> anchor;
};

std::string generator_id(const BasePoint& q, std::size_t eigen_index);

// One generator per (base point, eigen index), graded by ind_Q + i - 1 (lambda_i > 0) or ind_Q + i (lambda_i < 0).
std::vector<Generator> blowup_critical_points(const BaseMorseData& base);

// Points of the unparametrized moduli space from [w_i] to [w_j] when it is zero-dimensional (i = j + 1).
std::size_t adjacent_trajectory_count(const LinearFlowModel& model, std::size_t i, std::size_t j);
bool adjacent_trajectory_count_mod2(const LinearFlowModel& model, std::size_t i, std::size_t j);

struct FlowOptions {
  double drift_tolerance = 1e-6;
  double stationary_threshold = 1e-8;
  std::size_t stationary_steps = 100;
};

struct FlowTrajectory {
  std::vector<double> t;
  std::vector<Eigen::VectorXd> phi;
  std::vector<double> s;
  std::vector<double> lambda;
  bool converged = false;
  std::size_t limit_index = 0; // smallest k with <phi0, w_k> != 0
  double limit_eigenvalue = 0;
  double max_norm_defect = 0;
};

FlowTrajectory integrate_blowup_flow(const LinearFlowModel& model, const Eigen::VectorXd& phi0, double s0,
                                     double t_max, double step, const FlowOptions& opts = {});

// e^{-Lt} phi0 normalized, and s0 * |e^{-Lt} phi0|, from the spectral decomposition.
std::pair<Eigen::VectorXd, double> closed_form_state(const LinearFlowModel& model, const Eigen::VectorXd& phi0,
                                                     double s0, double t);

// Trivialized product model: C^o empty, bar blocks = base counts tensor identity on eigen index.
BlockDifferentials build_model_complexes(const BaseMorseData& base);

// One base point, spectrum -m..-1, 1..p, lowest boundary-stable generator anchored at 0.
BaseMorseData s3_tower_model(std::size_t positive, std::size_t negative);

// Perfect Morse function on T^b (2^b points, index = popcount), shared fiber spectrum, anchored like s3_tower_model.
BaseMorseData torus_tower_model(std::size_t b1, std::size_t positive, std::size_t negative);

}
