// Copyright (c) 2026 The qfold authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "qfold/diagonal_op.hpp"
#include "qfold/encoding.hpp"
#include "qfold/interaction.hpp"
#include "qfold/lattice.hpp"
#include "qfold/peptide.hpp"

namespace qfold {

/// Penalty weights of the folding Hamiltonian: chirality violations,
/// immediate chain fold-backs, and overlap within a nearest-neighbor
/// contact.
struct PenaltyConfig {
  double chiral = 10.0;
  double back = 10.0;
  double one = 10.0;  // lambda_1, scales the contact distance constraints

  void validate() const {
    if (chiral < 0 || back < 0 || one < 0) {
      throw ValidationError("penalties must be non-negative");
    }
  }
};

namespace detail {

// Polynomial in Pauli-Z products: mask -> coefficient. Products of Z masks
// compose by XOR since Z^2 = I.
using ZPoly = std::map<ZMask, double>;

inline void poly_add(ZPoly& into, const ZPoly& other, double scale = 1.0) {
  for (const auto& [m, c] : other) {
    double& v = into[m];
    v += scale * c;
    if (std::abs(v) < 1e-15) into.erase(m);
  }
}

inline ZPoly poly_mul(const ZPoly& a, const ZPoly& b) {
  ZPoly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      out[ma ^ mb] += ca * cb;
    }
  }
  return out;
}

inline ZPoly poly_const(double c) {
  ZPoly p;
  if (c != 0.0) p[ZMask{}] = c;
  return p;
}

// Projector onto |1> of a register bit: (1 - Z)/2, with convention-fixed
// bits folded to constants.
inline ZPoly bit_value(const FoldingEncoding& enc, int bit) {
  if (enc.fixed_mask().test(bit)) {
    return poly_const(enc.fixed_values().test(bit) ? 1.0 : 0.0);
  }
  ZPoly p;
  p[ZMask{}] = 0.5;
  p[ZMask::bit(bit)] = -0.5;
  return p;
}

inline ZPoly indicator(const FoldingEncoding& enc, int hi_bit, int lo_bit, int value) {
  ZPoly hi = bit_value(enc, hi_bit);
  ZPoly lo = bit_value(enc, lo_bit);
  ZPoly one = poly_const(1.0);
  ZPoly hi_bar = one;
  poly_add(hi_bar, hi, -1.0);
  ZPoly lo_bar = one;
  poly_add(lo_bar, lo, -1.0);
  switch (value) {
    case 0: return poly_mul(hi_bar, lo_bar);
    case 1: return poly_mul(hi_bar, lo);
    case 2: return poly_mul(hi, lo_bar);
    default: return poly_mul(hi, lo);
  }
}

/// Sign of det(v_a, v_b, v_c) over the tetrahedral basis vectors; 0 when the
/// indices are not distinct.
inline int direction_parity(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  const Vec3 &va = kTurnVectors[static_cast<std::size_t>(a)],
             &vb = kTurnVectors[static_cast<std::size_t>(b)],
             &vc = kTurnVectors[static_cast<std::size_t>(c)];
  std::int64_t det = va[0] * (vb[1] * vc[2] - vb[2] * vc[1]) -
                     va[1] * (vb[0] * vc[2] - vb[2] * vc[0]) +
                     va[2] * (vb[0] * vc[1] - vb[1] * vc[0]);
  return det > 0 ? 1 : -1;
}

/// The chirality-correct side direction for a bead whose incoming turn is
/// `in`, outgoing turn `out`, at main-chain index `bead`; -1 when in == out.
inline int chiral_direction(int in, int out, int bead) {
  if (in == out) return -1;
  int parity = bead % 2 == 0 ? 1 : -1;
  for (int c = 0; c < 4; ++c) {
    if (c == in || c == out) continue;
    if (direction_parity(in, out, c) * parity > 0) return c;
  }
  return -1;
}

class HamiltonianBuilder {
 public:
  HamiltonianBuilder(const Peptide& peptide, const PenaltyConfig& penalties,
                     const InteractionTable& table)
      : peptide_(peptide), enc_(peptide), pen_(penalties), table_(table) {
    pen_.validate();
    const int n = peptide.length();
    main_ind_.resize(static_cast<std::size_t>(n) - 1);
    for (int k = 0; k < n - 1; ++k) {
      for (int a = 0; a < 4; ++a) {
        main_ind_[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)] =
            indicator(enc_, enc_.main_hi_bit(k), enc_.main_lo_bit(k), a);
      }
    }
    side_ind_.resize(static_cast<std::size_t>(n));
    for (int b = 0; b < n; ++b) {
      if (!enc_.has_side(b)) continue;
      for (int a = 0; a < 4; ++a) {
        side_ind_[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] =
            indicator(enc_, enc_.side_hi_bit(b), enc_.side_lo_bit(b), a);
      }
    }
  }

  DiagonalOperator build() {
    ZPoly h;
    poly_add(h, back_term());
    poly_add(h, chirality_term());
    poly_add(h, interaction_term());
    poly_add(h, short_range_term());
    std::vector<DiagonalTerm> terms;
    terms.reserve(h.size());
    for (const auto& [m, c] : h) terms.push_back({m, c});
    return DiagonalOperator(enc_.width(), std::move(terms), enc_.layout());
  }

  const FoldingEncoding& encoding() const { return enc_; }

 private:
  const ZPoly& mind(int turn, int a) const {
    return main_ind_[static_cast<std::size_t>(turn)][static_cast<std::size_t>(a)];
  }
  const ZPoly& sind(int bead, int a) const {
    return side_ind_[static_cast<std::size_t>(bead)][static_cast<std::size_t>(a)];
  }

  double mj(const BeadRef& p, const BeadRef& q) const {
    char rp = p.side ? peptide_.side_residue(p.bead) : peptide_.main_residue(p.bead);
    char rq = q.side ? peptide_.side_residue(q.bead) : peptide_.main_residue(q.bead);
    return table_.energy(rp, rq);
  }

  // Net signed step count along each tetrahedral axis between two beads.
  std::array<ZPoly, 4> axis_sums(const BeadRef& p, const BeadRef& q) const {
    std::array<ZPoly, 4> n;
    for (int a = 0; a < 4; ++a) {
      for (int k = p.bead; k < q.bead; ++k) {
        poly_add(n[static_cast<std::size_t>(a)], mind(k, a), k % 2 == 0 ? 1.0 : -1.0);
      }
      if (q.side) {
        poly_add(n[static_cast<std::size_t>(a)], sind(q.bead, a),
                 q.bead % 2 == 0 ? 1.0 : -1.0);
      }
      if (p.side) {
        poly_add(n[static_cast<std::size_t>(a)], sind(p.bead, a),
                 p.bead % 2 == 0 ? -1.0 : 1.0);
      }
    }
    return n;
  }

  // Squared contact-metric distance: sum over axes of the squared net step
  // count. Unit value means lattice adjacency.
  ZPoly distance(const BeadRef& p, const BeadRef& q) const {
    auto n = axis_sums(p, q);
    ZPoly d;
    for (const auto& na : n) poly_add(d, poly_mul(na, na));
    return d;
  }

  ZPoly back_term() const {
    ZPoly h;
    const int n = peptide_.length();
    for (int k = 0; k + 1 < n - 1; ++k) {
      for (int a = 0; a < 4; ++a) {
        poly_add(h, poly_mul(mind(k, a), mind(k + 1, a)), pen_.back);
      }
    }
    return h;
  }

  ZPoly chirality_term() const {
    ZPoly h;
    const int n = peptide_.length();
    for (int b = 1; b < n - 1; ++b) {
      if (!enc_.has_side(b)) continue;
      for (int in = 0; in < 4; ++in) {
        for (int out = 0; out < 4; ++out) {
          if (in == out) continue;
          int good = chiral_direction(in, out, b);
          ZPoly gate = poly_mul(mind(b - 1, in), mind(b, out));
          ZPoly wrong;
          for (int c = 0; c < 4; ++c) {
            if (c == good) continue;
            poly_add(wrong, sind(b, c));
          }
          poly_add(h, poly_mul(gate, wrong), pen_.chiral);
        }
      }
    }
    return h;
  }

  ZPoly first_neighbor(const BeadRef& p, const BeadRef& q) const {
    double lambda0 = 7.0 * (q.bead - p.bead + 1) * pen_.one;
    ZPoly e = distance(p, q);
    for (auto& [m, c] : e) c *= lambda0;
    poly_add(e, poly_const(-lambda0 + 0.1 * mj(p, q)));
    return e;
  }

  ZPoly second_neighbor(const BeadRef& p, const BeadRef& q) const {
    ZPoly e = distance(p, q);
    for (auto& [m, c] : e) c *= -pen_.one;
    poly_add(e, poly_const(2.0 * pen_.one + 0.1 * mj(p, q)));
    return e;
  }

  std::vector<BeadRef> backbone_neighbors(const BeadRef& r) const {
    if (r.side) return {{r.bead, false}};
    std::vector<BeadRef> out;
    if (r.bead - 1 >= 0) out.push_back({r.bead - 1, false});
    if (r.bead + 1 < peptide_.length()) out.push_back({r.bead + 1, false});
    return out;
  }

  ZPoly interaction_term() const {
    ZPoly h;
    for (const auto& contact : enc_.contacts()) {
      ZPoly body = first_neighbor(contact.lower, contact.upper);
      for (const auto& r : backbone_neighbors(contact.lower)) {
        if (r == contact.upper) continue;
        poly_add(body, ordered_second_neighbor(r, contact.upper));
      }
      for (const auto& r : backbone_neighbors(contact.upper)) {
        if (r == contact.lower) continue;
        poly_add(body, ordered_second_neighbor(contact.lower, r));
      }
      ZPoly gate = bit_value(enc_, contact.qubit);
      poly_add(h, poly_mul(gate, body));
    }
    return h;
  }

  ZPoly ordered_second_neighbor(const BeadRef& a, const BeadRef& b) const {
    bool swap = a.bead > b.bead || (a.bead == b.bead && a.side && !b.side);
    return swap ? second_neighbor(b, a) : second_neighbor(a, b);
  }

  // Side-side pairs three bonds apart can touch through the turns alone:
  // gate on every turn assignment whose contact distance is exactly one.
  ZPoly short_range_term() const {
    ZPoly h;
    const int n = peptide_.length();
    for (int i = 0; i + 3 < n; ++i) {
      int j = i + 3;
      if (!enc_.has_side(i) || !enc_.has_side(j)) continue;
      BeadRef si{i, true}, sj{j, true}, mi{i, false}, mjb{j, false};
      double energy = 0.1 * (mj(si, sj) + 0.1 * (mj(si, mjb) + mj(mi, sj)));
      ZPoly gate;
      for (int vsi = 0; vsi < 4; ++vsi) {
        for (int t0 = 0; t0 < 4; ++t0) {
          for (int t1 = 0; t1 < 4; ++t1) {
            for (int t2 = 0; t2 < 4; ++t2) {
              for (int vsj = 0; vsj < 4; ++vsj) {
                std::array<int, 4> cnt{};
                int s = i % 2 == 0 ? 1 : -1;
                cnt[static_cast<std::size_t>(vsi)] -= s;
                cnt[static_cast<std::size_t>(t0)] += s;
                cnt[static_cast<std::size_t>(t1)] -= s;
                cnt[static_cast<std::size_t>(t2)] += s;
                cnt[static_cast<std::size_t>(vsj)] -= s;
                int d = 0;
                for (int c : cnt) d += c * c;
                if (d != 1) continue;
                ZPoly term = poly_mul(sind(i, vsi), mind(i, t0));
                term = poly_mul(term, mind(i + 1, t1));
                term = poly_mul(term, mind(i + 2, t2));
                term = poly_mul(term, sind(j, vsj));
                poly_add(gate, term);
              }
            }
          }
        }
      }
      poly_add(h, gate, energy);
    }
    return h;
  }

  const Peptide& peptide_;
  FoldingEncoding enc_;
  PenaltyConfig pen_;
  const InteractionTable& table_;
  std::vector<std::array<ZPoly, 4>> main_ind_;
  std::vector<std::array<ZPoly, 4>> side_ind_;
};

}  // namespace detail

/// Builds the diagonal folding Hamiltonian H = H_gc + H_ch + H_in over the
/// full problem register (turn bits, side-chain bits, contact bits).
inline DiagonalOperator build_hamiltonian(const Peptide& peptide,
                                          const PenaltyConfig& penalties,
                                          const InteractionTable& table) {
  return detail::HamiltonianBuilder(peptide, penalties, table).build();
}

}  // namespace qfold
