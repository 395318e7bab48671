// Copyright (c) 2026 The qfold authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "qfold/diagonal_op.hpp"
#include "qfold/errors.hpp"

namespace qfold {

inline constexpr int kMaxStatevectorQubits = 26;  // memory guard, 2 GiB of amplitudes

/// Dense state of an n-qubit register. Qubit q is bit q of the amplitude
/// index.
class Statevector {
 public:
  explicit Statevector(int num_qubits) : n_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxStatevectorQubits) {
      throw CapacityError("statevector limited to " +
                          std::to_string(kMaxStatevectorQubits) + " qubits, requested " +
                          std::to_string(num_qubits));
    }
    amp_.assign(std::size_t{1} << n_, {0.0, 0.0});
    amp_[0] = {1.0, 0.0};
  }

  int num_qubits() const { return n_; }
  std::size_t dim() const { return amp_.size(); }
  const std::vector<std::complex<double>>& amplitudes() const { return amp_; }
  std::complex<double>& operator[](std::size_t i) { return amp_[i]; }
  const std::complex<double>& operator[](std::size_t i) const { return amp_[i]; }

  double norm() const {
    double s = 0.0;
    for (const auto& a : amp_) s += std::norm(a);
    return std::sqrt(s);
  }

  void apply_single_qubit(int q, std::complex<double> u00, std::complex<double> u01,
                          std::complex<double> u10, std::complex<double> u11) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < amp_.size(); base += 2 * stride) {
      for (std::size_t i = base; i < base + stride; ++i) {
        const auto a0 = amp_[i];
        const auto a1 = amp_[i + stride];
        amp_[i] = u00 * a0 + u01 * a1;
        amp_[i + stride] = u10 * a0 + u11 * a1;
      }
    }
  }

  void apply_ry(int q, double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    apply_single_qubit(q, c, -s, s, c);
  }

  void apply_rx(int q, double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    apply_single_qubit(q, c, std::complex<double>(0, -s), std::complex<double>(0, -s), c);
  }

  void apply_h(int q) {
    const double r = 1.0 / std::sqrt(2.0);
    apply_single_qubit(q, r, r, r, -r);
  }

  void apply_cx(int control, int target) {
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if ((i & cbit) && !(i & tbit)) std::swap(amp_[i], amp_[i | tbit]);
    }
  }

  /// Multiplies each basis amplitude by exp(-i * gamma * energy(basis)).
  /// Exact diagonal evolution; `energies` must have one entry per basis
  /// state.
  void apply_diagonal_phase(const std::vector<double>& energies, double gamma) {
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      amp_[i] *= std::complex<double>(std::cos(gamma * energies[i]),
                                      -std::sin(gamma * energies[i]));
    }
  }

  std::vector<double> probabilities() const {
    std::vector<double> p(amp_.size());
    for (std::size_t i = 0; i < amp_.size(); ++i) p[i] = std::norm(amp_[i]);
    return p;
  }

 private:
  int n_;
  std::vector<std::complex<double>> amp_;
};

/// Basis-state energy table of a diagonal operator, used by the phase gate.
inline std::vector<double> energy_table(const DiagonalOperator& op) {
  if (op.num_qubits() > kMaxStatevectorQubits) {
    throw CapacityError("energy table limited to simulator width");
  }
  std::vector<double> e(std::size_t{1} << op.num_qubits());
  for (std::size_t b = 0; b < e.size(); ++b) e[b] = op.evaluate_bits(b);
  return e;
}

}  // namespace qfold
