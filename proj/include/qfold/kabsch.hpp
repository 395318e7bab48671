// Copyright (c) 2026 The qfold authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "qfold/errors.hpp"
#include "qfold/structure_io.hpp"

namespace qfold {

/// Minimal RMSD between two point sets in index correspondence, over all
/// rigid alignments (optimal rotation and translation via the Kabsch
/// procedure). Degenerate (collinear) inputs are fine: any optimal rotation
/// gives the same RMSD.
inline double kabsch_rmsd(std::span<const Point3> a, std::span<const Point3> b) {
  if (a.size() != b.size()) {
    throw ValidationError("kabsch_rmsd: point counts differ (" + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()) + ")");
  }
  if (a.size() < 3) throw ValidationError("kabsch_rmsd: need at least 3 points");
  const Eigen::Index n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd A(n, 3), B(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) {
      A(i, c) = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      B(i, c) = b[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
    }
  }
  A.rowwise() -= A.colwise().mean();
  B.rowwise() -= B.colwise().mean();

  const Eigen::Matrix3d H = B.transpose() * A;
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d U = svd.matrixU(), V = svd.matrixV();
  Eigen::Matrix3d D = Eigen::Matrix3d::Identity();
  if ((U * V.transpose()).determinant() < 0) D(2, 2) = -1.0;  // proper rotation only
  const Eigen::Matrix3d R = U * D * V.transpose();

  const Eigen::MatrixXd diff = A - B * R;
  return std::sqrt(diff.squaredNorm() / static_cast<double>(n));
}

/// Plain RMSD without alignment.
inline double rmsd_unaligned(std::span<const Point3> a, std::span<const Point3> b) {
  if (a.size() != b.size()) throw ValidationError("rmsd: point counts differ");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t c = 0; c < 3; ++c) {
      const double d = a[i][c] - b[i][c];
      acc += d * d;
    }
  }
  return std::sqrt(acc / static_cast<double>(a.size()));
}

}  // namespace qfold
