// Copyright (c) 2026 The qfold authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "qfold/diagonal_op.hpp"
#include "qfold/errors.hpp"

namespace qfold {

inline constexpr int kMaxEnumerationQubits = 24;

/// Exact spectrum minimum of a diagonal operator by exhaustive enumeration.
struct ExactSolution {
  double min_energy = 0.0;
  std::vector<std::uint64_t> argmin_bitstrings;
  std::optional<std::vector<double>> full_spectrum;  // indexed by basis state
};

inline ExactSolution exact_ground_state(const DiagonalOperator& op, bool keep_spectrum = false) {
  if (op.num_qubits() > kMaxEnumerationQubits) {
    throw CapacityError("exhaustive enumeration limited to " +
                        std::to_string(kMaxEnumerationQubits) + " qubits, operator has " +
                        std::to_string(op.num_qubits()));
  }
  const std::uint64_t dim = std::uint64_t{1} << op.num_qubits();
  ExactSolution sol;
  sol.min_energy = std::numeric_limits<double>::infinity();
  if (keep_spectrum) sol.full_spectrum.emplace(dim);
  for (std::uint64_t b = 0; b < dim; ++b) {
    const double e = op.evaluate_bits(b);
    if (keep_spectrum) (*sol.full_spectrum)[b] = e;
    if (e < sol.min_energy - 1e-12) {
      sol.min_energy = e;
      sol.argmin_bitstrings.assign(1, b);
    } else if (e <= sol.min_energy + 1e-12) {
      sol.argmin_bitstrings.push_back(b);
    }
  }
  return sol;
}

}  // namespace qfold
