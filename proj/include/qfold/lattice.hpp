// Copyright (c) 2026 The qfold authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfold/errors.hpp"
#include "qfold/peptide.hpp"

namespace qfold {

using Vec3 = std::array<std::int64_t, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline std::int64_t squared_norm(const Vec3& a) {
  return a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
}

// The four tetrahedral basis vectors, indexed by turn value. Beads alternate
// between the two diamond sublattices: even beads step along +v, odd beads
// along -v.
inline constexpr std::array<Vec3, 4> kTurnVectors = {
    Vec3{1, 1, 1}, Vec3{1, -1, -1}, Vec3{-1, 1, -1}, Vec3{-1, -1, 1}};

/// Displacement taken by the turn leaving bead `bead_index`.
inline Vec3 turn_displacement(int turn, int bead_index) {
  const Vec3& v = kTurnVectors[static_cast<std::size_t>(turn)];
  if (bead_index % 2 == 0) return v;
  return {-v[0], -v[1], -v[2]};
}

// First two turns are fixed by convention; any fixed pair of distinct turn
// values is equivalent up to a lattice symmetry.
inline constexpr int kFixedTurn0 = 1;
inline constexpr int kFixedTurn1 = 0;

/// Turn sequence of a conformation. `main` has one entry per main-chain bond
/// (N-1 turns); `side` carries the side-chain turn of each hosting bead.
struct TurnSequence {
  std::vector<int> main;
  std::vector<std::optional<int>> side;
};

/// Width of the user-facing configuration register: 2 bits per free main
/// turn plus 2 bits per side chain.
inline int configuration_width(const Peptide& peptide) {
  int n = peptide.length();
  if (n < 4) throw ValidationError("configuration register needs at least 4 beads");
  return 2 * (n - 3) + 2 * peptide.num_side_chains();
}

/// Decodes a configuration bitstring into turns. The string is turn-major,
/// big-endian within each 2-bit turn code: main turns 2..N-2 first, then one
/// code per side chain in bead order. Turns 0 and 1 take the fixed values.
inline TurnSequence decode_turns(std::string_view bits, const Peptide& peptide) {
  const int n = peptide.length();
  const int want = configuration_width(peptide);
  if (static_cast<int>(bits.size()) != want) {
    throw ValidationError("configuration register width mismatch: expected " +
                          std::to_string(want) + " bits, got " +
                          std::to_string(bits.size()));
  }
  for (char c : bits) {
    if (c != '0' && c != '1') throw ValidationError("bitstring must be over {0,1}");
  }
  auto code = [&](int pos) {
    return 2 * (bits[static_cast<std::size_t>(pos)] - '0') +
           (bits[static_cast<std::size_t>(pos) + 1] - '0');
  };
  TurnSequence t;
  t.main.resize(static_cast<std::size_t>(n) - 1);
  t.main[0] = kFixedTurn0;
  t.main[1] = kFixedTurn1;
  int pos = 0;
  for (int k = 2; k <= n - 2; ++k, pos += 2) t.main[static_cast<std::size_t>(k)] = code(pos);
  t.side.resize(static_cast<std::size_t>(n));
  for (int b = 0; b < n; ++b) {
    if (peptide.has_side_chain(b)) {
      t.side[static_cast<std::size_t>(b)] = code(pos);
      pos += 2;
    }
  }
  return t;
}

/// Inverse of decode_turns over the free turns.
inline std::string encode_turns(const TurnSequence& turns, const Peptide& peptide) {
  const int n = peptide.length();
  std::string bits;
  bits.reserve(static_cast<std::size_t>(configuration_width(peptide)));
  auto push = [&](int v) {
    bits.push_back(v & 2 ? '1' : '0');
    bits.push_back(v & 1 ? '1' : '0');
  };
  for (int k = 2; k <= n - 2; ++k) push(turns.main[static_cast<std::size_t>(k)]);
  for (int b = 0; b < n; ++b) {
    if (peptide.has_side_chain(b)) push(*turns.side[static_cast<std::size_t>(b)]);
  }
  return bits;
}

/// Canonical structure label: the free main turns as digits, then side turns
/// after a '-' when present. Matches the turn strings used to label predicted
/// structures ("310", "130", ...).
inline std::string turn_string(const TurnSequence& turns, const Peptide& peptide) {
  std::string s;
  const int n = peptide.length();
  for (int k = 2; k <= n - 2; ++k) {
    s.push_back(static_cast<char>('0' + turns.main[static_cast<std::size_t>(k)]));
  }
  if (peptide.num_side_chains() > 0) {
    s.push_back('-');
    for (int b = 0; b < n; ++b) {
      if (peptide.has_side_chain(b)) {
        s.push_back(static_cast<char>('0' + *turns.side[static_cast<std::size_t>(b)]));
      }
    }
  }
  return s;
}

/// A decoded structure on the integer lattice. Side beads sit one lattice
/// step from their host bead, on the host's step parity.
struct Conformation {
  TurnSequence turns;
  std::vector<Vec3> main_coords;
  std::vector<std::optional<Vec3>> side_coords;
};

inline Conformation turns_to_coordinates(const TurnSequence& turns, const Peptide& peptide) {
  const int n = peptide.length();
  if (static_cast<int>(turns.main.size()) != n - 1) {
    throw ValidationError("turn sequence length must be N-1");
  }
  Conformation conf;
  conf.turns = turns;
  conf.main_coords.resize(static_cast<std::size_t>(n));
  conf.main_coords[0] = {0, 0, 0};
  for (int k = 0; k < n - 1; ++k) {
    conf.main_coords[static_cast<std::size_t>(k) + 1] =
        conf.main_coords[static_cast<std::size_t>(k)] +
        turn_displacement(turns.main[static_cast<std::size_t>(k)], k);
  }
  conf.side_coords.resize(static_cast<std::size_t>(n));
  for (int b = 0; b < n; ++b) {
    if (!peptide.has_side_chain(b)) continue;
    if (static_cast<std::size_t>(b) >= turns.side.size() ||
        !turns.side[static_cast<std::size_t>(b)]) {
      throw ValidationError("missing side-chain turn for bead " + std::to_string(b));
    }
    conf.side_coords[static_cast<std::size_t>(b)] =
        conf.main_coords[static_cast<std::size_t>(b)] +
        turn_displacement(*turns.side[static_cast<std::size_t>(b)], b);
  }
  return conf;
}

/// Bead ids for overlap reports: main bead k is id k; the side bead of main
/// bead k is id N + k.
struct OverlapReport {
  std::vector<std::pair<int, int>> pairs;
  bool self_avoiding() const { return pairs.empty(); }
};

inline OverlapReport detect_overlap(const Conformation& conf) {
  const int n = static_cast<int>(conf.main_coords.size());
  std::vector<std::pair<Vec3, int>> beads;
  for (int k = 0; k < n; ++k) beads.emplace_back(conf.main_coords[static_cast<std::size_t>(k)], k);
  for (int k = 0; k < n; ++k) {
    if (conf.side_coords[static_cast<std::size_t>(k)]) {
      beads.emplace_back(*conf.side_coords[static_cast<std::size_t>(k)], n + k);
    }
  }
  std::map<Vec3, std::vector<int>> sites;
  for (const auto& [pos, id] : beads) sites[pos].push_back(id);
  OverlapReport report;
  for (const auto& [pos, ids] : sites) {
    for (std::size_t a = 0; a < ids.size(); ++a) {
      for (std::size_t b = a + 1; b < ids.size(); ++b) {
        report.pairs.emplace_back(ids[a], ids[b]);
      }
    }
  }
  std::sort(report.pairs.begin(), report.pairs.end());
  report.pairs.erase(std::unique(report.pairs.begin(), report.pairs.end()),
                     report.pairs.end());
  return report;
}

}  // namespace qfold
