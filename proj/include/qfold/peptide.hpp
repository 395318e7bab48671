// Copyright (c) 2026 The qfold authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qfold/errors.hpp"

namespace qfold {

/// One-letter codes of the 20 proteinogenic amino acids, in the fixed
/// order used by the bundled contact-energy table.
inline constexpr std::array<char, 20> kAminoAcids = {
    'A', 'R', 'N', 'D', 'C', 'Q', 'E', 'G', 'H', 'I',
    'L', 'K', 'M', 'F', 'P', 'S', 'T', 'W', 'Y', 'V'};

inline int amino_index(char code) {
  for (std::size_t i = 0; i < kAminoAcids.size(); ++i) {
    if (kAminoAcids[i] == code) return static_cast<int>(i);
  }
  return -1;
}

inline bool is_amino_acid(char code) { return amino_index(code) >= 0; }

/// A coarse-grained peptide: one bead per main-chain residue plus an
/// optional single-residue side chain per bead. Side chains are allowed
/// on interior beads only.
class Peptide {
 public:
  Peptide(std::string main_chain, std::vector<std::optional<char>> side_chains)
      : main_chain_(std::move(main_chain)), side_chains_(std::move(side_chains)) {
    validate();
  }

  explicit Peptide(std::string main_chain)
      : main_chain_(std::move(main_chain)), side_chains_(main_chain_.size()) {
    validate();
  }

  static Peptide from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("main_chain") || !j["main_chain"].is_string()) {
      throw ValidationError("peptide: expected object with string field \"main_chain\"");
    }
    std::string main = j["main_chain"].get<std::string>();
    std::vector<std::optional<char>> sides(main.size());
    if (j.contains("side_chains")) {
      const auto& sc = j["side_chains"];
      if (!sc.is_array() || sc.size() != main.size()) {
        throw ValidationError("peptide: \"side_chains\" must be an array with one entry per bead");
      }
      for (std::size_t i = 0; i < sc.size(); ++i) {
        if (sc[i].is_null()) continue;
        if (!sc[i].is_string() || sc[i].get<std::string>().size() != 1) {
          throw ValidationError("peptide: side chain entries must be null or a single-letter code");
        }
        sides[i] = sc[i].get<std::string>()[0];
      }
    }
    for (const auto& [key, _] : j.items()) {
      if (key != "main_chain" && key != "side_chains") {
        throw ValidationError("peptide: unknown key \"" + key + "\"");
      }
    }
    return Peptide(std::move(main), std::move(sides));
  }

  nlohmann::json to_json() const {
    nlohmann::json sides = nlohmann::json::array();
    for (const auto& s : side_chains_) {
      if (s) sides.push_back(std::string(1, *s));
      else sides.push_back(nullptr);
    }
    return {{"main_chain", main_chain_}, {"side_chains", sides}};
  }

  const std::string& main_chain() const { return main_chain_; }
  const std::vector<std::optional<char>>& side_chains() const { return side_chains_; }

  int length() const { return static_cast<int>(main_chain_.size()); }

  bool has_side_chain(int bead) const {
    return side_chains_[static_cast<std::size_t>(bead)].has_value();
  }

  char side_residue(int bead) const {
    return *side_chains_[static_cast<std::size_t>(bead)];
  }

  char main_residue(int bead) const {
    return main_chain_[static_cast<std::size_t>(bead)];
  }

  int num_side_chains() const {
    int n = 0;
    for (const auto& s : side_chains_) n += s.has_value();
    return n;
  }

 private:
  void validate() const {
    if (main_chain_.size() < 2) {
      throw ValidationError("peptide: main chain must have at least 2 beads");
    }
    for (char c : main_chain_) {
      if (!is_amino_acid(c)) {
        throw ValidationError(std::string("peptide: unknown amino-acid code '") + c + "'");
      }
    }
    if (side_chains_.size() != main_chain_.size()) {
      throw ValidationError("peptide: side chain list length must equal main chain length");
    }
    for (std::size_t i = 0; i < side_chains_.size(); ++i) {
      if (!side_chains_[i]) continue;
      if (!is_amino_acid(*side_chains_[i])) {
        throw ValidationError(std::string("peptide: unknown side-chain code '") +
                              *side_chains_[i] + "'");
      }
      if (i == 0 || i + 1 == side_chains_.size()) {
        throw ValidationError("peptide: side chains are allowed on interior beads only");
      }
    }
  }

  std::string main_chain_;
  std::vector<std::optional<char>> side_chains_;
};

}  // namespace qfold
