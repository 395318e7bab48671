// Copyright (c) 2026 The qfold authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "qfold/encoding.hpp"
#include "qfold/hamiltonian.hpp"
#include "qfold/interaction.hpp"
#include "qfold/lattice.hpp"
#include "qfold/peptide.hpp"

namespace qfold {

namespace detail {

// Coordinates of every bead of a decoded register assignment.
struct GeometricState {
  Conformation conf;

  Vec3 position(const BeadRef& r) const {
    if (r.side) return *conf.side_coords[static_cast<std::size_t>(r.bead)];
    return conf.main_coords[static_cast<std::size_t>(r.bead)];
  }

  static int sublattice(const BeadRef& r) {
    return (r.bead + (r.side ? 1 : 0)) % 2;
  }

  // Squared contact-metric distance from integer coordinates: adjacency is
  // exactly 1, an even-sublattice coincidence is 0.
  double contact_distance_sq(const BeadRef& p, const BeadRef& q) const {
    Vec3 d = position(q) - position(p);
    int par = sublattice(p) != sublattice(q) ? 1 : 0;
    return (static_cast<double>(squared_norm(d)) + par) / 4.0;
  }
};

}  // namespace detail

/// Energy of a full-register bit assignment computed geometrically from the
/// decoded structure, term by term, without operator algebra. Serves as the
/// independent oracle for build_hamiltonian: the two agree on every
/// assignment.
inline double classical_energy(const Peptide& peptide, const PenaltyConfig& penalties,
                               const InteractionTable& table, const ZMask& bits,
                               int bitstring_width) {
  penalties.validate();
  FoldingEncoding enc(peptide);
  if (bitstring_width != enc.width()) {
    throw ValidationError("bitstring width " + std::to_string(bitstring_width) +
                          " does not match register width " + std::to_string(enc.width()));
  }
  TurnSequence turns = enc.read_turns(bits);
  detail::GeometricState geo{turns_to_coordinates(turns, peptide)};
  const int n = peptide.length();
  double energy = 0.0;

  // fold-back penalty: consecutive equal turns reverse a step
  for (int k = 0; k + 1 < n - 1; ++k) {
    if (turns.main[static_cast<std::size_t>(k)] == turns.main[static_cast<std::size_t>(k) + 1]) {
      energy += penalties.back;
    }
  }

  // chirality: the side bead must leave its host along the unique
  // handedness-correct direction
  for (int b = 1; b < n - 1; ++b) {
    if (!peptide.has_side_chain(b)) continue;
    int in = turns.main[static_cast<std::size_t>(b) - 1];
    int out = turns.main[static_cast<std::size_t>(b)];
    if (in == out) continue;
    int good = detail::chiral_direction(in, out, b);
    if (*turns.side[static_cast<std::size_t>(b)] != good) energy += penalties.chiral;
  }

  // gated nearest-neighbor contacts
  auto residue = [&](const BeadRef& r) {
    return r.side ? peptide.side_residue(r.bead) : peptide.main_residue(r.bead);
  };
  auto backbone_neighbors = [&](const BeadRef& r) {
    std::vector<BeadRef> out;
    if (r.side) {
      out.push_back({r.bead, false});
    } else {
      if (r.bead - 1 >= 0) out.push_back({r.bead - 1, false});
      if (r.bead + 1 < n) out.push_back({r.bead + 1, false});
    }
    return out;
  };
  for (const auto& contact : enc.contacts()) {
    if (!bits.test(contact.qubit)) continue;
    double lambda0 = 7.0 * (contact.upper.bead - contact.lower.bead + 1) * penalties.one;
    double d = geo.contact_distance_sq(contact.lower, contact.upper);
    energy += lambda0 * (d - 1.0) + 0.1 * table.energy(residue(contact.lower),
                                                       residue(contact.upper));
    for (const auto& r : backbone_neighbors(contact.lower)) {
      if (r == contact.upper) continue;
      double d2 = geo.contact_distance_sq(r, contact.upper);
      energy += penalties.one * (2.0 - d2) +
                0.1 * table.energy(residue(r), residue(contact.upper));
    }
    for (const auto& r : backbone_neighbors(contact.upper)) {
      if (r == contact.lower) continue;
      double d2 = geo.contact_distance_sq(contact.lower, r);
      energy += penalties.one * (2.0 - d2) +
                0.1 * table.energy(residue(contact.lower), residue(r));
    }
  }

  // ungated short-range side-side contacts (three bonds apart)
  for (int i = 0; i + 3 < n; ++i) {
    int j = i + 3;
    if (!peptide.has_side_chain(i) || !peptide.has_side_chain(j)) continue;
    BeadRef si{i, true}, sj{j, true};
    if (geo.contact_distance_sq(si, sj) == 1.0) {
      energy += 0.1 * (table.energy(peptide.side_residue(i), peptide.side_residue(j)) +
                       0.1 * (table.energy(peptide.side_residue(i), peptide.main_residue(j)) +
                              table.energy(peptide.main_residue(i), peptide.side_residue(j))));
    }
  }
  return energy;
}

}  // namespace qfold
