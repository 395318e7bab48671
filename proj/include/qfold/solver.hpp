// Copyright (c) 2026 The qfold authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qfold/circuit.hpp"
#include "qfold/cobyla.hpp"
#include "qfold/diagonal_op.hpp"
#include "qfold/encoding.hpp"
#include "qfold/lattice.hpp"
#include "qfold/mitigation.hpp"
#include "qfold/objective.hpp"
#include "qfold/peptide.hpp"
#include "qfold/sampling.hpp"

namespace qfold {

enum class Algorithm { Vqe, Qaoa, CvarVqe, CvarQaoa };

inline Algorithm algorithm_from_string(const std::string& s) {
  if (s == "vqe") return Algorithm::Vqe;
  if (s == "qaoa") return Algorithm::Qaoa;
  if (s == "cvar_vqe") return Algorithm::CvarVqe;
  if (s == "cvar_qaoa") return Algorithm::CvarQaoa;
  throw ValidationError("unknown algorithm: " + s);
}

inline std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Vqe: return "vqe";
    case Algorithm::Qaoa: return "qaoa";
    case Algorithm::CvarVqe: return "cvar_vqe";
    default: return "cvar_qaoa";
  }
}

inline bool is_qaoa(Algorithm a) { return a == Algorithm::Qaoa || a == Algorithm::CvarQaoa; }
inline bool is_cvar(Algorithm a) { return a == Algorithm::CvarVqe || a == Algorithm::CvarQaoa; }

struct AnsatzConfig {
  int reps = 1;  // RealAmplitudes repetitions (VQE family)
  Entanglement entanglement = Entanglement::Full;
  int p = 2;  // QAOA depth
};

enum class MitigationMode { Off, Full, Tensored };

struct RunSpec {
  Algorithm algorithm = Algorithm::CvarVqe;
  ObjectiveSpec objective;
  AnsatzConfig ansatz;
  std::uint64_t shots = 8192;
  int iterations = 50;
  std::optional<ReadoutNoise> noise;
  MitigationMode mitigation = MitigationMode::Off;
  std::uint64_t calibration_shots = 8192;
  std::uint64_t seed = 0;

  /// Effective objective: the CVaR algorithm names force the CVaR kind; the
  /// plain names keep whatever objective was configured, so every
  /// algorithm/objective combination is valid.
  ObjectiveSpec effective_objective() const {
    ObjectiveSpec spec = objective;
    if (is_cvar(algorithm)) spec.kind = ObjectiveSpec::Kind::Cvar;
    spec.validate();
    return spec;
  }
};

/// Optional decoding context: with it, results carry the decoded lattice
/// structure of the best sampled bitstring.
struct DecodeContext {
  const Peptide* peptide = nullptr;
  const QubitMap* map = nullptr;
};

struct FoldingResult {
  OptimizationTrace trace;
  SampleSet final_samples;                      // resampled at the best parameters
  std::optional<QuasiDistribution> mitigated;   // when mitigation is on
  std::map<std::uint64_t, double> energy_per_bitstring;
  std::uint64_t best_bitstring = 0;             // minimum-energy sampled bitstring
  double best_energy = std::numeric_limits<double>::infinity();  // reported eigenvalue
  std::uint64_t most_frequent_bitstring = 0;
  std::optional<Conformation> decoded;
  std::optional<OverlapReport> overlap;
  std::string turn_string;  // canonical label of the decoded structure
};

/// Runs one variational folding trial: builds the ansatz, minimizes the
/// chosen objective over seeded sampled energies, re-samples at the best
/// parameters, and reports the minimum-energy sampled bitstring.
inline FoldingResult run_algorithm(const RunSpec& spec, const DiagonalOperator& op,
                                   const DecodeContext& decode = {}) {
  if (op.num_qubits() > kMaxStatevectorQubits) {
    throw CapacityError("operator exceeds the statevector qubit cap");
  }
  const ObjectiveSpec objective = spec.effective_objective();
  if (spec.noise) {
    if (spec.noise->num_qubits() != op.num_qubits()) {
      throw ValidationError("readout noise width does not match operator");
    }
  }
  if (spec.mitigation != MitigationMode::Off && !spec.noise) {
    throw ValidationError("mitigation requires a readout noise channel");
  }

  std::mt19937_64 seeder(spec.seed);
  const std::uint64_t init_seed = seeder();
  const std::uint64_t calibration_seed = seeder();
  std::uint64_t sample_seed = seeder();

  std::optional<CalibrationMatrix> calibration;
  if (spec.mitigation != MitigationMode::Off) {
    calibration = build_calibration(
        op.num_qubits(), *spec.noise, spec.calibration_shots,
        spec.mitigation == MitigationMode::Full ? CalibrationMode::Full
                                                : CalibrationMode::Tensored,
        calibration_seed);
  }

  Circuit circuit = is_qaoa(spec.algorithm)
                        ? build_qaoa_circuit(op, spec.ansatz.p)
                        : build_real_amplitudes(op.num_qubits(), spec.ansatz.reps,
                                                spec.ansatz.entanglement);

  std::mt19937_64 init_rng(init_seed);
  std::vector<double> initial(static_cast<std::size_t>(circuit.num_parameters()));
  for (double& x : initial) {
    x = (2.0 * uniform_unit(init_rng) - 1.0) * 3.14159265358979323846;
  }

  std::mt19937_64 shot_seeder(sample_seed);
  auto sample_at = [&](std::span<const double> params) {
    Statevector state = run_circuit(circuit, params);
    return qfold::sample(state, spec.shots, spec.noise, shot_seeder());
  };
  auto objective_of = [&](const SampleSet& samples) {
    if (calibration) {
      return objective_from_distribution(objective, mitigate(samples, *calibration), op);
    }
    return objective_from_samples(objective, samples, op);
  };

  OptimizerConfig opt;
  opt.max_evaluations = spec.iterations;
  OptimizationTrace trace = minimize(
      [&](std::span<const double> params) { return objective_of(sample_at(params)); },
      initial, opt);

  FoldingResult result;
  result.final_samples = sample_at(trace.best_params);
  if (calibration) result.mitigated = mitigate(result.final_samples, *calibration);
  result.trace = std::move(trace);

  std::uint64_t top_count = 0;
  for (const auto& [bits, count] : result.final_samples.counts) {
    const double e = op.evaluate_bits(bits);
    result.energy_per_bitstring[bits] = e;
    if (e < result.best_energy) {
      result.best_energy = e;
      result.best_bitstring = bits;
    }
    if (count > top_count) {
      top_count = count;
      result.most_frequent_bitstring = bits;
    }
  }

  if (decode.peptide && decode.map) {
    const ZMask full = decode.map->lift(result.best_bitstring);
    FoldingEncoding enc(*decode.peptide);
    TurnSequence turns = enc.read_turns(full);
    result.decoded = turns_to_coordinates(turns, *decode.peptide);
    result.overlap = detect_overlap(*result.decoded);
    result.turn_string = qfold::turn_string(turns, *decode.peptide);
  }
  return result;
}

}  // namespace qfold
