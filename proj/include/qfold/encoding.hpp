// Copyright (c) 2026 The qfold authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfold/diagonal_op.hpp"
#include "qfold/lattice.hpp"
#include "qfold/peptide.hpp"

namespace qfold {

// Register layout of the folding problem, shared by the operator builder and
// the geometric energy oracle.
//
//   [0, 2(N-1))          main-chain turn bits, turn k at (2k, 2k+1) = (hi, lo)
//   [2(N-1), 4(N-1))     side-chain turn bits, bead k's slot at offset 2k
//   [4(N-1), W)          contact bits, one slot block of (N-1)^2 per class
//
// with W = 4(N-1) + 4(N-1)^2. Turn 0 is fixed to 1 and turn 1 to 0; when
// bead 1 carries no side chain the low bit of turn 2 is additionally fixed
// to 1, which removes a residual mirror symmetry of the lattice.

/// A bead of the coarse-grained model: a main-chain bead or the side bead
/// attached to one.
struct BeadRef {
  int bead = 0;
  bool side = false;

  friend bool operator==(const BeadRef&, const BeadRef&) = default;
};

/// Classes of candidate nearest-neighbor contacts, each gated by its own
/// interaction qubit.
enum class ContactClass { MainMain = 0, MainSide = 1, SideMain = 2, SideSide = 3 };

struct ContactPair {
  ContactClass cls;
  BeadRef lower, upper;
  int qubit = 0;  // register index of the gating interaction bit
};

class FoldingEncoding {
 public:
  explicit FoldingEncoding(const Peptide& peptide) : n_(peptide.length()) {
    if (n_ < 4) {
      throw ValidationError("instance too small: need at least 4 beads for a free turn");
    }
    side_.resize(static_cast<std::size_t>(n_));
    for (int b = 0; b < n_; ++b) side_[static_cast<std::size_t>(b)] = peptide.has_side_chain(b);

    fix_turn2_low_ = !peptide.has_side_chain(1);
    fixed_mask_.set(0);
    fixed_mask_.set(1);
    fixed_values_.set(1);  // turn 0 = 1
    fixed_mask_.set(2);
    fixed_mask_.set(3);  // turn 1 = 0
    if (fix_turn2_low_) {
      fixed_mask_.set(5);
      fixed_values_.set(5);  // turn 2 in {1, 3}
    }

    // Candidate contacts: opposite sublattices at the right minimum chain
    // separation. Main-main and side-side need odd separation >= 5,
    // main-side even separation >= 4. Side-side pairs at separation 3 touch
    // through turns alone and are handled without a gating qubit.
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        int sep = j - i;
        if (sep % 2 == 1 && sep >= 5) {
          add_contact(ContactClass::MainMain, {i, false}, {j, false});
          if (has_side(i) && has_side(j)) {
            add_contact(ContactClass::SideSide, {i, true}, {j, true});
          }
        } else if (sep % 2 == 0 && sep >= 4) {
          if (has_side(j)) add_contact(ContactClass::MainSide, {i, false}, {j, true});
          if (has_side(i)) add_contact(ContactClass::SideMain, {i, true}, {j, false});
        }
      }
    }
  }

  int num_beads() const { return n_; }
  bool has_side(int bead) const { return side_[static_cast<std::size_t>(bead)]; }

  int main_hi_bit(int turn) const { return 2 * turn; }
  int main_lo_bit(int turn) const { return 2 * turn + 1; }
  int side_hi_bit(int bead) const { return 2 * (n_ - 1) + 2 * bead; }
  int side_lo_bit(int bead) const { return 2 * (n_ - 1) + 2 * bead + 1; }

  int contact_base() const { return 4 * (n_ - 1); }
  int width() const { return 4 * (n_ - 1) + 4 * (n_ - 1) * (n_ - 1); }

  int contact_bit(ContactClass cls, int i, int j) const {
    return contact_base() + static_cast<int>(cls) * (n_ - 1) * (n_ - 1) +
           i * (n_ - 1) + (j - 2);
  }

  const std::vector<ContactPair>& contacts() const { return contacts_; }

  bool fixes_turn2_low() const { return fix_turn2_low_; }
  const ZMask& fixed_mask() const { return fixed_mask_; }
  const ZMask& fixed_values() const { return fixed_values_; }

  RegisterLayout layout() const {
    RegisterLayout l;
    l.config_qubits = 4 * (n_ - 1);
    l.interaction_qubits = width() - l.config_qubits;
    l.fixed_mask = fixed_mask_;
    l.fixed_values = fixed_values_;
    return l;
  }

  /// Reads the turn sequence from a full-register assignment. Convention-
  /// fixed turn bits are interpreted per the convention regardless of the
  /// supplied bit values.
  TurnSequence read_turns(const ZMask& bits) const {
    TurnSequence t;
    t.main.resize(static_cast<std::size_t>(n_) - 1);
    t.side.resize(static_cast<std::size_t>(n_));
    for (int k = 0; k < n_ - 1; ++k) {
      int hi = bits.test(main_hi_bit(k)) ? 1 : 0;
      int lo = bits.test(main_lo_bit(k)) ? 1 : 0;
      if (k == 0) { hi = 0; lo = 1; }
      if (k == 1) { hi = 0; lo = 0; }
      if (k == 2 && fix_turn2_low_) lo = 1;
      t.main[static_cast<std::size_t>(k)] = 2 * hi + lo;
    }
    for (int b = 0; b < n_; ++b) {
      if (!has_side(b)) continue;
      int hi = bits.test(side_hi_bit(b)) ? 1 : 0;
      int lo = bits.test(side_lo_bit(b)) ? 1 : 0;
      t.side[static_cast<std::size_t>(b)] = 2 * hi + lo;
    }
    return t;
  }

  /// Writes a turn sequence into a full-register assignment (inverse of
  /// read_turns on the free bits).
  ZMask write_turns(const TurnSequence& t) const {
    ZMask bits;
    for (int k = 0; k < n_ - 1; ++k) {
      int v = t.main[static_cast<std::size_t>(k)];
      bits.set(main_hi_bit(k), v & 2);
      bits.set(main_lo_bit(k), v & 1);
    }
    for (int b = 0; b < n_; ++b) {
      if (!has_side(b)) continue;
      int v = *t.side[static_cast<std::size_t>(b)];
      bits.set(side_hi_bit(b), v & 2);
      bits.set(side_lo_bit(b), v & 1);
    }
    return bits;
  }

 private:
  void add_contact(ContactClass cls, BeadRef lo, BeadRef up) {
    contacts_.push_back({cls, lo, up, contact_bit(cls, lo.bead, up.bead)});
  }

  int n_;
  std::vector<bool> side_;
  bool fix_turn2_low_ = true;
  ZMask fixed_mask_, fixed_values_;
  std::vector<ContactPair> contacts_;
};

}  // namespace qfold
