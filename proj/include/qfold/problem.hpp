// Copyright (c) 2026 The qfold authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>

#include "qfold/classical_energy.hpp"
#include "qfold/diagonal_op.hpp"
#include "qfold/hamiltonian.hpp"
#include "qfold/interaction.hpp"
#include "qfold/peptide.hpp"

namespace qfold {

/// A folding instance with its operators: the full-register Hamiltonian and
/// the compressed form actually simulated.
struct FoldingProblem {
  Peptide peptide;
  PenaltyConfig penalties;
  InteractionTable table;
  DiagonalOperator full_op;
  DiagonalOperator op;  // compressed
  QubitMap map;

  static FoldingProblem create(Peptide peptide, const PenaltyConfig& penalties,
                               InteractionTable table) {
    DiagonalOperator full = build_hamiltonian(peptide, penalties, table);
    auto [compressed, map] = compress(full);
    return FoldingProblem{std::move(peptide), penalties,      std::move(table),
                          std::move(full),    std::move(compressed), std::move(map)};
  }

  /// Geometric oracle energy of a compressed bitstring.
  double oracle_energy(std::uint64_t compressed_bits) const {
    return classical_energy(peptide, penalties, table, map.lift(compressed_bits),
                            map.original_width);
  }
};

}  // namespace qfold
