// Copyright (c) 2026 The qfold authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "qfold/errors.hpp"

namespace qfold {

/// Derivative-free local optimizer configuration. `max_evaluations` counts
/// objective calls; the method evaluates once per iteration.
struct OptimizerConfig {
  int max_evaluations = 50;
  double rho_begin = 1.0;
  double rho_end = 1e-4;
};

/// Record of one optimization run; every objective evaluation is traced.
struct OptimizationTrace {
  struct Evaluation {
    std::vector<double> params;
    double value = 0.0;
  };
  std::vector<Evaluation> iterations;
  std::vector<double> best_params;
  double best_value = std::numeric_limits<double>::infinity();
  int evaluations = 0;
};

/// Minimizes a black-box objective with a COBYLA-style method: linear models
/// interpolated on a simplex of n+1 points drive trust-region steps, and the
/// trust radius shrinks only once the current radius stops producing
/// improvement.
inline OptimizationTrace minimize(const std::function<double(std::span<const double>)>& objective,
                                  std::vector<double> initial, const OptimizerConfig& config) {
  if (config.max_evaluations < 1) throw ValidationError("max_evaluations must be >= 1");
  if (initial.empty()) throw ValidationError("optimizer needs at least one parameter");
  const int n = static_cast<int>(initial.size());

  OptimizationTrace trace;
  auto evaluate = [&](const Eigen::VectorXd& x) {
    std::vector<double> p(x.data(), x.data() + x.size());
    const double v = objective(p);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "objective returned non-finite value at params [";
      for (int i = 0; i < n; ++i) os << (i ? ", " : "") << p[static_cast<std::size_t>(i)];
      os << "]";
      throw ComputeError(os.str());
    }
    trace.iterations.push_back({std::move(p), v});
    ++trace.evaluations;
    if (v < trace.best_value) {
      trace.best_value = v;
      trace.best_params = trace.iterations.back().params;
    }
    return v;
  };
  auto budget_left = [&] { return trace.evaluations < config.max_evaluations; };

  double rho = config.rho_begin;
  Eigen::MatrixXd simplex(n + 1, n);
  Eigen::VectorXd values(n + 1);

  simplex.row(0) = Eigen::Map<const Eigen::VectorXd>(initial.data(), n).transpose();
  values(0) = evaluate(simplex.row(0));
  for (int i = 0; i < n && budget_left(); ++i) {
    simplex.row(i + 1) = simplex.row(0);
    simplex(i + 1, i) += rho;
    values(i + 1) = evaluate(simplex.row(i + 1));
  }
  const bool full_simplex = trace.evaluations >= n + 1;

  while (budget_left() && full_simplex) {
    // keep the incumbent at row 0
    int best = 0;
    for (int i = 1; i <= n; ++i) {
      if (values(i) < values(best)) best = i;
    }
    if (best != 0) {
      simplex.row(0).swap(simplex.row(best));
      std::swap(values(0), values(best));
    }

    // linear interpolation model on the simplex edges
    Eigen::MatrixXd edges(n, n);
    Eigen::VectorXd rhs(n);
    for (int i = 1; i <= n; ++i) {
      edges.row(i - 1) = simplex.row(i) - simplex.row(0);
      rhs(i - 1) = values(i) - values(0);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(edges);
    const bool degenerate = !lu.isInvertible();
    Eigen::VectorXd gradient = Eigen::VectorXd::Zero(n);
    if (!degenerate) gradient = lu.solve(rhs);
    const double gnorm = gradient.norm();

    if (degenerate || !gradient.allFinite() || gnorm < 1e-12) {
      // rebuild geometry around the incumbent, then tighten the region
      int worst = 1;
      for (int i = 2; i <= n; ++i) {
        if (values(i) > values(worst)) worst = i;
      }
      Eigen::VectorXd dir = (simplex.row(worst) - simplex.row(0)).transpose();
      const double len = dir.norm();
      if (len < 1e-300) {
        dir = Eigen::VectorXd::Unit(n, 0);
      } else {
        dir /= len;
      }
      simplex.row(worst) = simplex.row(0) + rho * dir.transpose();
      values(worst) = evaluate(simplex.row(worst));
      if (rho <= config.rho_end * 1.0001) break;
      rho = std::max(rho * 0.5, config.rho_end);
      continue;
    }

    // trust-region step along the model's steepest descent
    Eigen::VectorXd candidate = simplex.row(0).transpose() - (rho / gnorm) * gradient;
    const double fc = evaluate(candidate);
    int worst = 1;
    for (int i = 2; i <= n; ++i) {
      if (values(i) > values(worst)) worst = i;
    }
    const bool improved_best = fc < values(0);
    if (fc < values(worst)) {
      simplex.row(worst) = candidate.transpose();
      values(worst) = fc;
    }
    if (!improved_best && budget_left()) {
      // shrink only once the simplex is acceptable: no vertex farther than
      // 2.1 * rho from the incumbent
      int far = 1;
      double far_dist = 0.0;
      for (int i = 1; i <= n; ++i) {
        const double d = (simplex.row(i) - simplex.row(0)).norm();
        if (d > far_dist) {
          far_dist = d;
          far = i;
        }
      }
      if (far_dist > 2.1 * rho) {
        Eigen::VectorXd dir = (simplex.row(far) - simplex.row(0)).transpose() / far_dist;
        simplex.row(far) = simplex.row(0) + rho * dir.transpose();
        values(far) = evaluate(simplex.row(far));
      } else {
        if (rho <= config.rho_end * 1.0001) break;
        rho = std::max(rho * 0.5, config.rho_end);
      }
    }
  }
  return trace;
}

}  // namespace qfold
