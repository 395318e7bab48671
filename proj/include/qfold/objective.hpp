// Copyright (c) 2026 The qfold authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "qfold/diagonal_op.hpp"
#include "qfold/errors.hpp"
#include "qfold/sampling.hpp"

namespace qfold {

/// Which aggregate of the sampled energies the optimizer minimizes.
struct ObjectiveSpec {
  enum class Kind { Expectation, Cvar } kind = Kind::Expectation;
  double alpha = 0.01;  // CVaR tail fraction in (0, 1]

  void validate() const {
    if (kind == Kind::Cvar && (alpha <= 0.0 || alpha > 1.0)) {
      throw ValidationError("CVaR alpha must be in (0, 1]");
    }
  }
};

inline void check_sample_width(const SampleSet& samples, const DiagonalOperator& op) {
  if (samples.shots == 0 || samples.counts.empty()) {
    throw ValidationError("empty sample set");
  }
  op.check_width(samples.num_qubits);
}

/// Shot-weighted mean of the exact diagonal energies.
inline double expectation_from_samples(const SampleSet& samples, const DiagonalOperator& op) {
  check_sample_width(samples, op);
  double acc = 0.0;
  for (const auto& [bits, count] : samples.counts) {
    acc += static_cast<double>(count) * op.evaluate_bits(bits);
  }
  return acc / static_cast<double>(samples.shots);
}

/// Mean of the lowest ceil(alpha * shots) sampled energies (at least one
/// shot). alpha = 1 recovers the plain expectation.
inline double cvar_from_samples(const SampleSet& samples, const DiagonalOperator& op,
                                double alpha) {
  if (alpha <= 0.0 || alpha > 1.0) throw ValidationError("CVaR alpha must be in (0, 1]");
  check_sample_width(samples, op);
  std::vector<std::pair<double, std::uint64_t>> by_energy;
  by_energy.reserve(samples.counts.size());
  for (const auto& [bits, count] : samples.counts) {
    by_energy.emplace_back(op.evaluate_bits(bits), count);
  }
  std::sort(by_energy.begin(), by_energy.end());
  std::uint64_t tail = static_cast<std::uint64_t>(
      std::ceil(alpha * static_cast<double>(samples.shots)));
  tail = std::max<std::uint64_t>(tail, 1);
  std::uint64_t taken = 0;
  double acc = 0.0;
  for (const auto& [energy, count] : by_energy) {
    const std::uint64_t take = std::min(count, tail - taken);
    acc += static_cast<double>(take) * energy;
    taken += take;
    if (taken == tail) break;
  }
  return acc / static_cast<double>(tail);
}

/// Normalized weights over bitstrings, as produced by readout-error
/// mitigation. Objectives accept these wherever counts are accepted.
using QuasiDistribution = std::map<std::uint64_t, double>;

inline double expectation_from_distribution(const QuasiDistribution& dist,
                                            const DiagonalOperator& op) {
  if (dist.empty()) throw ValidationError("empty distribution");
  double acc = 0.0;
  for (const auto& [bits, w] : dist) acc += w * op.evaluate_bits(bits);
  return acc;
}

/// CVaR over a weighted distribution: the lowest-energy tail of total mass
/// exactly alpha, with fractional inclusion of the boundary entry.
inline double cvar_from_distribution(const QuasiDistribution& dist,
                                     const DiagonalOperator& op, double alpha) {
  if (alpha <= 0.0 || alpha > 1.0) throw ValidationError("CVaR alpha must be in (0, 1]");
  if (dist.empty()) throw ValidationError("empty distribution");
  std::vector<std::pair<double, double>> by_energy;
  by_energy.reserve(dist.size());
  for (const auto& [bits, w] : dist) by_energy.emplace_back(op.evaluate_bits(bits), w);
  std::sort(by_energy.begin(), by_energy.end());
  double taken = 0.0, acc = 0.0;
  for (const auto& [energy, w] : by_energy) {
    const double take = std::min(w, alpha - taken);
    if (take <= 0.0) break;
    acc += take * energy;
    taken += take;
  }
  if (taken <= 0.0) throw ValidationError("distribution has no mass");
  return acc / taken;
}

inline double objective_from_samples(const ObjectiveSpec& spec, const SampleSet& samples,
                                     const DiagonalOperator& op) {
  if (spec.kind == ObjectiveSpec::Kind::Expectation) {
    return expectation_from_samples(samples, op);
  }
  return cvar_from_samples(samples, op, spec.alpha);
}

inline double objective_from_distribution(const ObjectiveSpec& spec,
                                          const QuasiDistribution& dist,
                                          const DiagonalOperator& op) {
  if (spec.kind == ObjectiveSpec::Kind::Expectation) {
    return expectation_from_distribution(dist, op);
  }
  return cvar_from_distribution(dist, op, spec.alpha);
}

}  // namespace qfold
