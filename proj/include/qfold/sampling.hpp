// Copyright (c) 2026 The qfold authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "qfold/errors.hpp"
#include "qfold/statevector.hpp"

namespace qfold {

/// Deterministic uniform double in [0, 1) from a 64-bit generator draw.
/// Pinned explicitly so seeded sampling is reproducible bit for bit.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Classical readout bit-flip channel applied at measurement, one flip
/// probability pair per qubit.
struct ReadoutNoise {
  std::vector<double> p01;  // P(read 1 | prepared 0) per qubit
  std::vector<double> p10;  // P(read 0 | prepared 1) per qubit

  static ReadoutNoise uniform(int num_qubits, double p0to1, double p1to0) {
    ReadoutNoise n;
    n.p01.assign(static_cast<std::size_t>(num_qubits), p0to1);
    n.p10.assign(static_cast<std::size_t>(num_qubits), p1to0);
    n.validate();
    return n;
  }

  int num_qubits() const { return static_cast<int>(p01.size()); }

  void validate() const {
    if (p01.size() != p10.size()) throw ValidationError("readout noise: length mismatch");
    for (double p : p01) {
      if (p < 0.0 || p > 1.0) throw ValidationError("readout noise: probability outside [0,1]");
    }
    for (double p : p10) {
      if (p < 0.0 || p > 1.0) throw ValidationError("readout noise: probability outside [0,1]");
    }
  }

  static ReadoutNoise from_json(const nlohmann::json& j, int num_qubits) {
    auto read = [&](const char* key) {
      std::vector<double> v;
      if (!j.contains(key)) {
        v.assign(static_cast<std::size_t>(num_qubits), 0.0);
      } else if (j[key].is_number()) {
        v.assign(static_cast<std::size_t>(num_qubits), j[key].get<double>());
      } else if (j[key].is_array()) {
        v = j[key].get<std::vector<double>>();
        if (static_cast<int>(v.size()) != num_qubits) {
          throw ValidationError("readout noise: per-qubit array length mismatch");
        }
      } else {
        throw ValidationError("readout noise: expected number or array");
      }
      return v;
    };
    ReadoutNoise n{read("p01"), read("p10")};
    n.validate();
    return n;
  }
};

/// Shot-count histogram over measured bitstrings of a fixed register width.
struct SampleSet {
  int num_qubits = 0;
  std::uint64_t shots = 0;
  std::map<std::uint64_t, std::uint64_t> counts;

  /// Display form of a key: qubit (n-1) down to qubit 0.
  std::string bitstring(std::uint64_t key) const {
    std::string s(static_cast<std::size_t>(num_qubits), '0');
    for (int q = 0; q < num_qubits; ++q) {
      if ((key >> q) & 1) s[static_cast<std::size_t>(num_qubits - 1 - q)] = '1';
    }
    return s;
  }

  std::map<std::uint64_t, double> distribution() const {
    std::map<std::uint64_t, double> d;
    for (const auto& [k, c] : counts) {
      d[k] = static_cast<double>(c) / static_cast<double>(shots);
    }
    return d;
  }
};

/// Draws `shots` measurements from |amplitude|^2, optionally through the
/// readout channel. Deterministic under a fixed seed.
inline SampleSet sample(const Statevector& state, std::uint64_t shots,
                        const std::optional<ReadoutNoise>& noise, std::uint64_t seed) {
  if (shots < 1) throw ValidationError("shots must be >= 1");
  if (noise && noise->num_qubits() != state.num_qubits()) {
    throw ValidationError("readout noise width does not match register");
  }
  std::vector<double> cdf = state.probabilities();
  double acc = 0.0;
  for (double& p : cdf) {
    acc += p;
    p = acc;
  }
  const double total = acc;
  std::mt19937_64 rng(seed);
  SampleSet out;
  out.num_qubits = state.num_qubits();
  out.shots = shots;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = uniform_unit(rng) * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::uint64_t outcome = static_cast<std::uint64_t>(it - cdf.begin());
    if (outcome >= cdf.size()) outcome = cdf.size() - 1;
    if (noise) {
      for (int q = 0; q < state.num_qubits(); ++q) {
        const bool bit = (outcome >> q) & 1;
        const double pflip = bit ? noise->p10[static_cast<std::size_t>(q)]
                                 : noise->p01[static_cast<std::size_t>(q)];
        if (pflip > 0.0 && uniform_unit(rng) < pflip) outcome ^= std::uint64_t{1} << q;
      }
    }
    ++out.counts[outcome];
  }
  return out;
}

}  // namespace qfold
