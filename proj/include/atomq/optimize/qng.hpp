// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

// Quantum natural gradient with Tikhonov regularization:
//
//   d(lambda) = argmin |F d + eta g|^2 + lambda |d|^2 = -eta (F^T F + lambda I)^{-1} F^T g
//
// lambda is the corner (largest Menger curvature) of the log-log L-curve
// (|F d + eta g|, |d|) sampled on a logarithmic grid.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "atomq/error.hpp"

namespace atomq {

struct QngOptions {
  double eta = 0.05;
  double lambda_min = 1e-8;
  double lambda_max = 1e2;
  std::size_t lambda_points = 25;

  std::vector<double> lambda_grid() const {
    if (lambda_points < 3 || !(lambda_min > 0) || !(lambda_max > lambda_min))
      throw ConfigError("QNG lambda grid needs >= 3 points and 0 < lambda_min < lambda_max");
    std::vector<double> g(lambda_points);
    const double a = std::log10(lambda_min), b = std::log10(lambda_max);
    for (std::size_t i = 0; i < lambda_points; ++i)
      g[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(lambda_points - 1));
    return g;
  }
};

struct QngState {
  QngOptions options;
  double last_lambda = 0.0;
  std::vector<double> lambda_history;

  QngState() = default;
  explicit QngState(QngOptions o) : options(o) {}
};

/// One point of the L-curve.
struct TikhonovPoint {
  double lambda = 0.0;
  Eigen::VectorXd step;
  double residual_norm = 0.0;  // |F d + eta g|
  double step_norm = 0.0;      // |d|
};

/// Tikhonov solutions for every lambda, sharing one eigendecomposition of the symmetric F.
inline std::vector<TikhonovPoint> tikhonov_path(const Eigen::MatrixXd& f, const Eigen::VectorXd& grad, double eta,
                                                const std::vector<double>& lambdas) {
  if (f.rows() != f.cols() || f.rows() != grad.size()) throw ValidationError("metric and gradient sizes differ");
  const double scale = std::max(1.0, f.cwiseAbs().maxCoeff());
  if ((f - f.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) throw ValidationError("metric is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (f + f.transpose()));
  const Eigen::VectorXd s = es.eigenvalues();
  const Eigen::VectorXd b = es.eigenvectors().transpose() * grad;  // g in the eigenbasis
  std::vector<TikhonovPoint> out;
  for (double lam : lambdas) {
    Eigen::VectorXd c(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) c(i) = -eta * s(i) * b(i) / (s(i) * s(i) + lam);
    TikhonovPoint p;
    p.lambda = lam;
    p.step = es.eigenvectors() * c;
    p.residual_norm = (f * p.step + eta * grad).norm();
    p.step_norm = p.step.norm();
    out.push_back(std::move(p));
  }
  return out;
}

/// Signed Menger curvature of three points (positive for a counter-clockwise turn).
inline double menger_curvature(double x1, double y1, double x2, double y2, double x3, double y3) {
  const double cross = (x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1);
  const double d12 = std::hypot(x2 - x1, y2 - y1), d23 = std::hypot(x3 - x2, y3 - y2), d13 = std::hypot(x3 - x1, y3 - y1);
  const double den = d12 * d23 * d13;
  return den > 0 ? 2.0 * cross / den : 0.0;
}

/// Index of the L-curve corner; falls back to the smallest lambda when the
/// curve is degenerate (zero gradient, exactly invertible directions only, ...).
inline std::size_t l_curve_corner(const std::vector<TikhonovPoint>& path) {
  std::vector<double> x, y;
  for (const auto& p : path) {
    if (!(p.residual_norm > 0) || !(p.step_norm > 0)) return 0;
    x.push_back(std::log(p.residual_norm));
    y.push_back(std::log(p.step_norm));
  }
  std::size_t best = 0;
  double best_c = 0.0;
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    const double c = menger_curvature(x[i - 1], y[i - 1], x[i], y[i], x[i + 1], y[i + 1]);
    if (std::isfinite(c) && c > best_c) best_c = c, best = i;
  }
  return best;
}

/// theta <- theta + d(lambda*) and records lambda*.
inline void qng_step(std::span<double> theta, std::span<const double> grad, const Eigen::MatrixXd& f, QngState& st) {
  if (theta.size() != grad.size()) throw ValidationError("QNG dimension mismatch");
  const Eigen::VectorXd g = Eigen::Map<const Eigen::VectorXd>(grad.data(), static_cast<Eigen::Index>(grad.size()));
  const auto path = tikhonov_path(f, g, st.options.eta, st.options.lambda_grid());
  const auto& p = path[l_curve_corner(path)];
  for (std::size_t i = 0; i < theta.size(); ++i) theta[i] += p.step(static_cast<Eigen::Index>(i));
  st.last_lambda = p.lambda;
  st.lambda_history.push_back(p.lambda);
}

}  // namespace atomq
