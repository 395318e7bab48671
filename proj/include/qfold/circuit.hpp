// Copyright (c) 2026 The qfold authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qfold/diagonal_op.hpp"
#include "qfold/errors.hpp"
#include "qfold/statevector.hpp"

namespace qfold {

enum class Entanglement { Full, Linear };

inline Entanglement entanglement_from_string(const std::string& s) {
  if (s == "full") return Entanglement::Full;
  if (s == "linear") return Entanglement::Linear;
  throw ValidationError("unknown entanglement map: " + s);
}

/// A parameterized circuit over RY/RX/H/CX and exact diagonal-phase gates.
/// Parameter slots are bound at run time.
class Circuit {
 public:
  struct Gate {
    enum class Kind { Ry, Rx, H, Cx, DiagonalPhase } kind;
    int q0 = 0;
    int q1 = 0;          // CX target
    int param = -1;      // slot index for parameterized gates
    double param_scale = 1.0;
    std::shared_ptr<const std::vector<double>> energies;  // DiagonalPhase table
  };

  explicit Circuit(int num_qubits) : n_(num_qubits) {
    if (num_qubits < 1) throw ValidationError("circuit needs at least one qubit");
  }

  int num_qubits() const { return n_; }
  int num_parameters() const { return num_params_; }
  const std::vector<Gate>& gates() const { return gates_; }

  int new_parameter() { return num_params_++; }

  void ry(int q, int param_slot) { add({Gate::Kind::Ry, q, 0, param_slot, 1.0, nullptr}); }
  void rx(int q, int param_slot, double scale = 1.0) {
    add({Gate::Kind::Rx, q, 0, param_slot, scale, nullptr});
  }
  void h(int q) { add({Gate::Kind::H, q, 0, -1, 1.0, nullptr}); }
  void cx(int control, int target) {
    if (control == target) throw ValidationError("cx: control equals target");
    add({Gate::Kind::Cx, control, target, -1, 1.0, nullptr});
  }
  void diagonal_phase(std::shared_ptr<const std::vector<double>> energies, int param_slot) {
    if (!energies || energies->size() != (std::size_t{1} << n_)) {
      throw ValidationError("diagonal phase table size must be 2^n");
    }
    add({Gate::Kind::DiagonalPhase, 0, 0, param_slot, 1.0, std::move(energies)});
  }

 private:
  void add(Gate g) {
    if (g.q0 < 0 || g.q0 >= n_ || g.q1 < 0 || g.q1 >= n_) {
      throw ValidationError("gate qubit index out of range");
    }
    gates_.push_back(std::move(g));
  }

  int n_;
  int num_params_ = 0;
  std::vector<Gate> gates_;
};

/// Executes the circuit from |0...0> with the given parameter binding.
inline Statevector run_circuit(const Circuit& circuit, std::span<const double> params) {
  if (static_cast<int>(params.size()) != circuit.num_parameters()) {
    throw ValidationError("expected " + std::to_string(circuit.num_parameters()) +
                          " parameters, got " + std::to_string(params.size()));
  }
  Statevector state(circuit.num_qubits());
  for (const auto& g : circuit.gates()) {
    switch (g.kind) {
      case Circuit::Gate::Kind::Ry:
        state.apply_ry(g.q0, g.param_scale * params[static_cast<std::size_t>(g.param)]);
        break;
      case Circuit::Gate::Kind::Rx:
        state.apply_rx(g.q0, g.param_scale * params[static_cast<std::size_t>(g.param)]);
        break;
      case Circuit::Gate::Kind::H:
        state.apply_h(g.q0);
        break;
      case Circuit::Gate::Kind::Cx:
        state.apply_cx(g.q0, g.q1);
        break;
      case Circuit::Gate::Kind::DiagonalPhase:
        state.apply_diagonal_phase(*g.energies,
                                   g.param_scale * params[static_cast<std::size_t>(g.param)]);
        break;
    }
  }
  return state;
}

/// Hardware-efficient ansatz of RY layers separated by CX entanglement
/// blocks; all amplitudes stay real. Parameter count is n * (reps + 1).
inline Circuit build_real_amplitudes(int num_qubits, int reps,
                                     Entanglement entanglement = Entanglement::Full) {
  if (num_qubits < 1) throw ValidationError("ansatz needs at least one qubit");
  if (reps < 0) throw ValidationError("reps must be non-negative");
  Circuit c(num_qubits);
  auto ry_layer = [&] {
    for (int q = 0; q < num_qubits; ++q) c.ry(q, c.new_parameter());
  };
  ry_layer();
  for (int r = 0; r < reps; ++r) {
    if (entanglement == Entanglement::Full) {
      for (int i = 0; i < num_qubits; ++i) {
        for (int j = i + 1; j < num_qubits; ++j) c.cx(i, j);
      }
    } else {
      for (int i = 0; i + 1 < num_qubits; ++i) c.cx(i, i + 1);
    }
    ry_layer();
  }
  return c;
}

/// QAOA ansatz: uniform superposition, then p alternations of the exact
/// cost phase exp(-i gamma H_C) and the transverse-field mixer
/// exp(-i beta X) on every qubit. 2p parameters, ordered
/// (gamma_1, beta_1, ..., gamma_p, beta_p).
inline Circuit build_qaoa_circuit(const DiagonalOperator& cost, int p) {
  if (p < 1) throw ValidationError("QAOA depth must be at least 1");
  Circuit c(cost.num_qubits());
  auto energies = std::make_shared<const std::vector<double>>(energy_table(cost));
  for (int q = 0; q < cost.num_qubits(); ++q) c.h(q);
  for (int layer = 0; layer < p; ++layer) {
    int gamma = c.new_parameter();
    c.diagonal_phase(energies, gamma);
    int beta = c.new_parameter();
    for (int q = 0; q < cost.num_qubits(); ++q) c.rx(q, beta, 2.0);
  }
  return c;
}

}  // namespace qfold
