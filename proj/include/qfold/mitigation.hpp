// Copyright (c) 2026 The qfold authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qfold/errors.hpp"
#include "qfold/objective.hpp"
#include "qfold/sampling.hpp"

namespace qfold {

enum class CalibrationMode { Full, Tensored };

inline constexpr int kMaxFullCalibrationQubits = 12;

/// Column-stochastic readout calibration: column j is the measured outcome
/// distribution when basis state j is prepared. Tensored mode stores one
/// 2x2 matrix per qubit instead of the full 2^n x 2^n matrix.
struct CalibrationMatrix {
  int num_qubits = 0;
  CalibrationMode mode = CalibrationMode::Full;
  // full: dense column-major 2^n x 2^n
  std::vector<double> full;
  // tensored: per qubit {p(0|0), p(1|0), p(0|1), p(1|1)} column-major
  std::vector<std::array<double, 4>> tensored;

  std::size_t dim() const { return std::size_t{1} << num_qubits; }

  double full_at(std::size_t row, std::size_t col) const {
    return full[col * dim() + row];
  }

  /// y = A x for a dense simplex vector.
  void apply(const std::vector<double>& x, std::vector<double>& y) const {
    const std::size_t d = dim();
    if (mode == CalibrationMode::Full) {
      std::fill(y.begin(), y.end(), 0.0);
      for (std::size_t col = 0; col < d; ++col) {
        const double xc = x[col];
        if (xc == 0.0) continue;
        const double* column = full.data() + col * d;
        for (std::size_t row = 0; row < d; ++row) y[row] += column[row] * xc;
      }
    } else {
      y = x;
      apply_tensored(y, false);
    }
  }

  /// y = A^T x.
  void apply_transpose(const std::vector<double>& x, std::vector<double>& y) const {
    const std::size_t d = dim();
    if (mode == CalibrationMode::Full) {
      for (std::size_t col = 0; col < d; ++col) {
        const double* column = full.data() + col * d;
        double acc = 0.0;
        for (std::size_t row = 0; row < d; ++row) acc += column[row] * x[row];
        y[col] = acc;
      }
    } else {
      y = x;
      apply_tensored(y, true);
    }
  }

  double condition_number() const {
    if (mode == CalibrationMode::Tensored) {
      double cond = 1.0;
      for (const auto& m : tensored) cond *= cond2x2(m);
      return cond;
    }
    if (num_qubits <= 10) {
      Eigen::Map<const Eigen::MatrixXd> a(full.data(), static_cast<Eigen::Index>(dim()),
                                          static_cast<Eigen::Index>(dim()));
      Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
      const double smin = svd.singularValues().tail(1)(0);
      const double smax = svd.singularValues()(0);
      return smin <= 0.0 ? std::numeric_limits<double>::infinity() : smax / smin;
    }
    return 1.0;  // beyond exact-check size; solver residuals still guard
  }

  nlohmann::json to_json() const {
    nlohmann::json j{{"num_qubits", num_qubits},
                     {"mode", mode == CalibrationMode::Full ? "full" : "tensored"}};
    if (mode == CalibrationMode::Full) {
      j["matrix"] = full;
    } else {
      nlohmann::json qs = nlohmann::json::array();
      for (const auto& m : tensored) qs.push_back({m[0], m[1], m[2], m[3]});
      j["qubits"] = qs;
    }
    return j;
  }

  static CalibrationMatrix from_json(const nlohmann::json& j) {
    CalibrationMatrix cal;
    cal.num_qubits = j.at("num_qubits").get<int>();
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "full") {
      cal.mode = CalibrationMode::Full;
      cal.full = j.at("matrix").get<std::vector<double>>();
      if (cal.full.size() != cal.dim() * cal.dim()) {
        throw DataError("calibration: matrix size mismatch");
      }
    } else if (mode == "tensored") {
      cal.mode = CalibrationMode::Tensored;
      for (const auto& q : j.at("qubits")) {
        cal.tensored.push_back({q[0].get<double>(), q[1].get<double>(), q[2].get<double>(),
                                q[3].get<double>()});
      }
      if (static_cast<int>(cal.tensored.size()) != cal.num_qubits) {
        throw DataError("calibration: per-qubit matrix count mismatch");
      }
    } else {
      throw DataError("calibration: unknown mode " + mode);
    }
    return cal;
  }

 private:
  static double cond2x2(const std::array<double, 4>& m) {
    // singular values of [[m0, m2], [m1, m3]]
    const double a = m[0], c = m[1], b = m[2], d = m[3];
    const double s1 = a * a + b * b + c * c + d * d;
    const double det = a * d - b * c;
    const double disc = std::sqrt(std::max(0.0, s1 * s1 - 4.0 * det * det));
    const double smax = std::sqrt(std::max(0.0, (s1 + disc) / 2.0));
    const double smin = std::sqrt(std::max(0.0, (s1 - disc) / 2.0));
    return smin <= 0.0 ? std::numeric_limits<double>::infinity() : smax / smin;
  }

  void apply_tensored(std::vector<double>& v, bool transpose) const {
    const std::size_t d = v.size();
    for (int q = 0; q < num_qubits; ++q) {
      const auto& m = tensored[static_cast<std::size_t>(q)];
      const double a00 = m[0], a10 = m[1], a01 = m[2], a11 = m[3];
      const std::size_t stride = std::size_t{1} << q;
      for (std::size_t base = 0; base < d; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
          const double v0 = v[i], v1 = v[i + stride];
          if (!transpose) {
            v[i] = a00 * v0 + a01 * v1;
            v[i + stride] = a10 * v0 + a11 * v1;
          } else {
            v[i] = a00 * v0 + a10 * v1;
            v[i + stride] = a01 * v0 + a11 * v1;
          }
        }
      }
    }
  }
};

/// Builds a calibration by preparing basis states through the readout
/// channel: every basis state in full mode, the all-zeros / all-ones pair
/// with per-qubit marginals in tensored mode.
inline CalibrationMatrix build_calibration(int num_qubits, const ReadoutNoise& noise,
                                           std::uint64_t shots_per_state,
                                           CalibrationMode mode, std::uint64_t seed) {
  if (shots_per_state < 1) throw ValidationError("calibration shots must be >= 1");
  if (noise.num_qubits() != num_qubits) {
    throw ValidationError("readout noise width does not match calibration width");
  }
  CalibrationMatrix cal;
  cal.num_qubits = num_qubits;
  cal.mode = mode;
  std::mt19937_64 rng(seed);
  auto flip = [&](std::uint64_t prepared) {
    std::uint64_t outcome = prepared;
    for (int q = 0; q < num_qubits; ++q) {
      const bool bit = (outcome >> q) & 1;
      const double pflip = bit ? noise.p10[static_cast<std::size_t>(q)]
                               : noise.p01[static_cast<std::size_t>(q)];
      if (pflip > 0.0 && uniform_unit(rng) < pflip) outcome ^= std::uint64_t{1} << q;
    }
    return outcome;
  };
  if (mode == CalibrationMode::Full) {
    if (num_qubits > kMaxFullCalibrationQubits) {
      throw CapacityError("full calibration limited to " +
                          std::to_string(kMaxFullCalibrationQubits) +
                          " qubits; use tensored mode");
    }
    const std::size_t d = cal.dim();
    cal.full.assign(d * d, 0.0);
    for (std::size_t prepared = 0; prepared < d; ++prepared) {
      for (std::uint64_t s = 0; s < shots_per_state; ++s) {
        cal.full[prepared * d + flip(prepared)] += 1.0;
      }
      for (std::size_t row = 0; row < d; ++row) {
        cal.full[prepared * d + row] /= static_cast<double>(shots_per_state);
      }
    }
  } else {
    std::vector<std::uint64_t> ones_given_zero(static_cast<std::size_t>(num_qubits), 0);
    std::vector<std::uint64_t> zeros_given_one(static_cast<std::size_t>(num_qubits), 0);
    const std::uint64_t all_ones =
        num_qubits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << num_qubits) - 1;
    for (std::uint64_t s = 0; s < shots_per_state; ++s) {
      const std::uint64_t outcome = flip(0);
      for (int q = 0; q < num_qubits; ++q) ones_given_zero[static_cast<std::size_t>(q)] += (outcome >> q) & 1;
    }
    for (std::uint64_t s = 0; s < shots_per_state; ++s) {
      const std::uint64_t outcome = flip(all_ones);
      for (int q = 0; q < num_qubits; ++q) zeros_given_one[static_cast<std::size_t>(q)] += 1 - ((outcome >> q) & 1);
    }
    for (int q = 0; q < num_qubits; ++q) {
      const double p01 = static_cast<double>(ones_given_zero[static_cast<std::size_t>(q)]) /
                         static_cast<double>(shots_per_state);
      const double p10 = static_cast<double>(zeros_given_one[static_cast<std::size_t>(q)]) /
                         static_cast<double>(shots_per_state);
      cal.tensored.push_back({1.0 - p01, p01, p10, 1.0 - p10});
    }
  }
  return cal;
}

namespace detail {

/// Euclidean projection onto the probability simplex.
inline void project_simplex(std::vector<double>& v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, tau = 0.0;
  int support = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cum += u[i];
    const double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) {
      tau = t;
      support = static_cast<int>(i + 1);
    }
  }
  if (support == 0) tau = (cum - 1.0) / static_cast<double>(u.size());
  for (double& x : v) x = std::max(0.0, x - tau);
}

}  // namespace detail

/// Corrects a measured histogram through the calibration: solves
/// cal * x = empirical by least squares constrained to the probability
/// simplex (x >= 0, sum x = 1), via accelerated projected gradient.
inline QuasiDistribution mitigate(const SampleSet& samples, const CalibrationMatrix& cal) {
  if (samples.num_qubits != cal.num_qubits) {
    throw ValidationError("sample width does not match calibration width");
  }
  if (samples.shots == 0) throw ValidationError("empty sample set");
  const double cond = cal.condition_number();
  if (!(cond <= 1e8)) {
    throw ComputeError("calibration matrix is singular or ill-conditioned (cond ~ " +
                       std::to_string(cond) + ")");
  }
  const std::size_t d = cal.dim();
  std::vector<double> y(d, 0.0);
  for (const auto& [bits, count] : samples.counts) {
    y[bits] = static_cast<double>(count) / static_cast<double>(samples.shots);
  }

  std::vector<double> x = y, residual(d), gradient(d), x_prev(d), momentum(d);
  double ysum = std::accumulate(y.begin(), y.end(), 0.0);
  if (std::abs(ysum - 1.0) > 1e-9) detail::project_simplex(x);

  // already optimal (identity calibration in particular): return unchanged
  cal.apply(x, residual);
  for (std::size_t i = 0; i < d; ++i) residual[i] -= y[i];
  cal.apply_transpose(residual, gradient);
  double g0 = 0.0;
  for (double g : gradient) g0 = std::max(g0, std::abs(g));
  if (g0 <= 1e-13) {
    QuasiDistribution out;
    for (std::size_t i = 0; i < d; ++i) {
      if (x[i] > 0.0) out[i] = x[i];
    }
    return out;
  }

  // Lipschitz bound: power iteration on A^T A
  std::vector<double> pv(d, 1.0 / static_cast<double>(d)), pt(d);
  double lip = 1.0;
  for (int it = 0; it < 12; ++it) {
    cal.apply(pv, pt);
    cal.apply_transpose(pt, pv);
    double nrm = 0.0;
    for (double v : pv) nrm += v * v;
    nrm = std::sqrt(nrm);
    if (nrm <= 0.0) break;
    lip = nrm;
    for (double& v : pv) v /= nrm;
  }
  const double step = 1.0 / std::max(lip, 1e-12);

  momentum = x;
  double t_acc = 1.0;
  for (int it = 0; it < 5000; ++it) {
    cal.apply(momentum, residual);
    for (std::size_t i = 0; i < d; ++i) residual[i] -= y[i];
    cal.apply_transpose(residual, gradient);
    double gmax = 0.0;
    for (double g : gradient) gmax = std::max(gmax, std::abs(g));
    x_prev = x;
    for (std::size_t i = 0; i < d; ++i) x[i] = momentum[i] - step * gradient[i];
    detail::project_simplex(x);
    const double t_next = (1.0 + std::sqrt(1.0 + 4.0 * t_acc * t_acc)) / 2.0;
    double delta = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      momentum[i] = x[i] + ((t_acc - 1.0) / t_next) * (x[i] - x_prev[i]);
      delta = std::max(delta, std::abs(x[i] - x_prev[i]));
    }
    t_acc = t_next;
    if (delta < 1e-15 && gmax < 1e-12) break;
    if (delta < 1e-16) break;
  }

  QuasiDistribution out;
  for (std::size_t i = 0; i < d; ++i) {
    if (x[i] > 0.0) out[i] = x[i];
  }
  return out;
}

}  // namespace qfold
