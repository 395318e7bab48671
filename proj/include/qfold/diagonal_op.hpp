// Copyright (c) 2026 The qfold authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "qfold/errors.hpp"

namespace qfold {

/// Bit mask over up to 128 qubits. Qubit q is bit q; word 0 holds qubits
/// 0..63.
struct ZMask {
  std::uint64_t w0 = 0;
  std::uint64_t w1 = 0;

  static ZMask bit(int q) {
    ZMask m;
    if (q < 64) m.w0 = std::uint64_t{1} << q;
    else m.w1 = std::uint64_t{1} << (q - 64);
    return m;
  }
  static ZMask from_bits(std::uint64_t low) { return ZMask{low, 0}; }

  bool test(int q) const {
    return q < 64 ? (w0 >> q) & 1 : (w1 >> (q - 64)) & 1;
  }
  void set(int q, bool v = true) {
    if (q < 64) {
      if (v) w0 |= std::uint64_t{1} << q;
      else w0 &= ~(std::uint64_t{1} << q);
    } else {
      if (v) w1 |= std::uint64_t{1} << (q - 64);
      else w1 &= ~(std::uint64_t{1} << (q - 64));
    }
  }
  bool empty() const { return w0 == 0 && w1 == 0; }
  int popcount() const { return std::popcount(w0) + std::popcount(w1); }

  friend ZMask operator&(const ZMask& a, const ZMask& b) { return {a.w0 & b.w0, a.w1 & b.w1}; }
  friend ZMask operator|(const ZMask& a, const ZMask& b) { return {a.w0 | b.w0, a.w1 | b.w1}; }
  friend ZMask operator^(const ZMask& a, const ZMask& b) { return {a.w0 ^ b.w0, a.w1 ^ b.w1}; }
  friend bool operator==(const ZMask& a, const ZMask& b) = default;
  friend auto operator<=>(const ZMask& a, const ZMask& b) {
    if (a.w1 != b.w1) return a.w1 <=> b.w1;
    return a.w0 <=> b.w0;
  }

  /// Parity of the overlap with a bit assignment: 0 or 1.
  int overlap_parity(const ZMask& bits) const {
    return (std::popcount(w0 & bits.w0) + std::popcount(w1 & bits.w1)) & 1;
  }

  std::string to_hex() const {
    char buf[35];
    if (w1 != 0) std::snprintf(buf, sizeof buf, "0x%llx%016llx",
                               static_cast<unsigned long long>(w1),
                               static_cast<unsigned long long>(w0));
    else std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(w0));
    return buf;
  }
  static ZMask from_hex(const std::string& s) {
    std::string h = s;
    if (h.rfind("0x", 0) == 0 || h.rfind("0X", 0) == 0) h = h.substr(2);
    if (h.empty() || h.size() > 32) throw DataError("bad mask hex string: " + s);
    ZMask m;
    std::string low = h.size() > 16 ? h.substr(h.size() - 16) : h;
    std::string high = h.size() > 16 ? h.substr(0, h.size() - 16) : "";
    m.w0 = std::stoull(low, nullptr, 16);
    if (!high.empty()) m.w1 = std::stoull(high, nullptr, 16);
    return m;
  }
};

struct DiagonalTerm {
  ZMask mask;
  double coeff = 0.0;
};

/// Labels partitioning the register into configuration and interaction
/// qubits, plus the convention-fixed bit assignments used when lifting
/// compressed bitstrings back to full width.
struct RegisterLayout {
  int config_qubits = 0;       // qubits [0, config_qubits) encode turns
  int interaction_qubits = 0;  // qubits [config_qubits, num_qubits) gate contacts
  ZMask fixed_mask;            // bits fixed by convention
  ZMask fixed_values;          // their values
};

/// Sum of Pauli-Z products: each term is (z_mask, coefficient). Diagonal in
/// the computational basis; evaluation on a bitstring is exact.
class DiagonalOperator {
 public:
  DiagonalOperator() = default;
  DiagonalOperator(int num_qubits, std::vector<DiagonalTerm> terms,
                   RegisterLayout layout = {})
      : num_qubits_(num_qubits), terms_(std::move(terms)), layout_(layout) {
    if (num_qubits < 0 || num_qubits > 128) {
      throw CapacityError("operator width must be in [0, 128]");
    }
    merge_terms();
  }

  int num_qubits() const { return num_qubits_; }
  const std::vector<DiagonalTerm>& terms() const { return terms_; }
  const RegisterLayout& layout() const { return layout_; }
  void set_layout(const RegisterLayout& l) { layout_ = l; }

  /// Energy of a basis state: sum of coeff * (-1)^popcount(mask & bits).
  double evaluate(const ZMask& bits) const {
    double e = 0.0;
    for (const auto& t : terms_) {
      e += t.mask.overlap_parity(bits) ? -t.coeff : t.coeff;
    }
    return e;
  }
  double evaluate_bits(std::uint64_t bits) const { return evaluate(ZMask::from_bits(bits)); }

  void check_width(int bitstring_width) const {
    if (bitstring_width != num_qubits_) {
      throw ValidationError("bitstring width " + std::to_string(bitstring_width) +
                            " does not match operator width " + std::to_string(num_qubits_));
    }
  }

  nlohmann::json to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : terms_) {
      terms.push_back({{"mask", t.mask.to_hex()}, {"coeff", t.coeff}});
    }
    return {{"num_qubits", num_qubits_},
            {"terms", terms},
            {"register_layout",
             {{"config_qubits", layout_.config_qubits},
              {"interaction_qubits", layout_.interaction_qubits},
              {"fixed_mask", layout_.fixed_mask.to_hex()},
              {"fixed_values", layout_.fixed_values.to_hex()}}}};
  }

  static DiagonalOperator from_json(const nlohmann::json& j) {
    std::vector<DiagonalTerm> terms;
    for (const auto& t : j.at("terms")) {
      terms.push_back({ZMask::from_hex(t.at("mask").get<std::string>()),
                       t.at("coeff").get<double>()});
    }
    RegisterLayout layout;
    if (j.contains("register_layout")) {
      const auto& l = j["register_layout"];
      layout.config_qubits = l.value("config_qubits", 0);
      layout.interaction_qubits = l.value("interaction_qubits", 0);
      layout.fixed_mask = ZMask::from_hex(l.value("fixed_mask", std::string("0x0")));
      layout.fixed_values = ZMask::from_hex(l.value("fixed_values", std::string("0x0")));
    }
    return DiagonalOperator(j.at("num_qubits").get<int>(), std::move(terms), layout);
  }

 private:
  void merge_terms() {
    std::map<ZMask, double> acc;
    for (const auto& t : terms_) acc[t.mask] += t.coeff;
    terms_.clear();
    for (const auto& [m, c] : acc) {
      if (std::abs(c) > 1e-13) terms_.push_back({m, c});
    }
  }

  int num_qubits_ = 0;
  std::vector<DiagonalTerm> terms_;
  RegisterLayout layout_;
};

/// Mapping produced by compression: which original qubits survive and what
/// values the removed ones take when lifting back to full width.
struct QubitMap {
  int original_width = 0;
  std::vector<int> kept;  // strictly increasing original indices
  ZMask fixed_values;     // values of removed qubits (0 where unconstrained)

  /// Expands a compressed bit assignment to the original register.
  ZMask lift(std::uint64_t compressed_bits) const {
    ZMask full = fixed_values;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      full.set(kept[i], (compressed_bits >> i) & 1);
    }
    return full;
  }

  /// Projects a full-register assignment onto the kept qubits.
  std::uint64_t project(const ZMask& full_bits) const {
    std::uint64_t b = 0;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      if (full_bits.test(kept[i])) b |= std::uint64_t{1} << i;
    }
    return b;
  }
};

/// Removes every qubit that appears in no term; remaining terms are
/// re-indexed onto a compact register. Convention-fixed bits recorded in the
/// operator layout are preserved in the map's fixed values.
inline std::pair<DiagonalOperator, QubitMap> compress(const DiagonalOperator& op) {
  ZMask used;
  for (const auto& t : op.terms()) used = used | t.mask;
  QubitMap map;
  map.original_width = op.num_qubits();
  for (int q = 0; q < op.num_qubits(); ++q) {
    if (used.test(q)) map.kept.push_back(q);
  }
  map.fixed_values = op.layout().fixed_values;
  for (int q : map.kept) map.fixed_values.set(q, false);

  std::vector<int> where(static_cast<std::size_t>(op.num_qubits()), -1);
  for (std::size_t i = 0; i < map.kept.size(); ++i) {
    where[static_cast<std::size_t>(map.kept[i])] = static_cast<int>(i);
  }
  std::vector<DiagonalTerm> terms;
  terms.reserve(op.terms().size());
  for (const auto& t : op.terms()) {
    ZMask m;
    for (int q : map.kept) {
      if (t.mask.test(q)) m.set(where[static_cast<std::size_t>(q)]);
    }
    terms.push_back({m, t.coeff});
  }
  RegisterLayout layout;  // compact register: config bits first, then contacts
  for (int q : map.kept) {
    if (q < op.layout().config_qubits) ++layout.config_qubits;
    else ++layout.interaction_qubits;
  }
  return {DiagonalOperator(static_cast<int>(map.kept.size()), std::move(terms), layout),
          std::move(map)};
}

}  // namespace qfold
