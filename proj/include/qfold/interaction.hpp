// Copyright (c) 2026 The qfold authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "qfold/errors.hpp"
#include "qfold/peptide.hpp"

namespace qfold {

/// Symmetric 20x20 table of inter-residue contact energies, indexed by
/// one-letter code. The bundled file carries the Miyazawa-Jernigan contact
/// energies in model units (reported as Hartree to match the literature).
class InteractionTable {
 public:
  InteractionTable() { e_.fill(0.0); }

  double energy(char a, char b) const {
    int i = amino_index(a), j = amino_index(b);
    if (i < 0 || j < 0) {
      throw ValidationError(std::string("unknown amino-acid code in energy lookup: '") +
                            (i < 0 ? a : b) + "'");
    }
    return e_[static_cast<std::size_t>(i) * 20 + static_cast<std::size_t>(j)];
  }

  void set_energy(char a, char b, double v) {
    int i = amino_index(a), j = amino_index(b);
    e_[static_cast<std::size_t>(i) * 20 + static_cast<std::size_t>(j)] = v;
    e_[static_cast<std::size_t>(j) * 20 + static_cast<std::size_t>(i)] = v;
  }

  /// Parses a table file: 20 rows in the residue order A R N D C Q E G H I L
  /// K M F P S T W Y V, each row lower-triangular (row k has k+1 entries) or
  /// a full 20-column matrix. '#' starts a comment line.
  static InteractionTable load(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      std::istringstream ss(line);
      std::vector<double> row;
      double v;
      while (ss >> v) row.push_back(v);
      if (!ss.eof()) throw DataError("interaction table: non-numeric token in row");
      if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.size() != 20) {
      throw DataError("interaction table: expected 20 rows, got " +
                      std::to_string(rows.size()));
    }
    bool lower = true, full = true;
    for (std::size_t k = 0; k < 20; ++k) {
      lower = lower && rows[k].size() == k + 1;
      full = full && rows[k].size() == 20;
    }
    if (!lower && !full) {
      throw DataError("interaction table: rows must be lower-triangular or 20 columns wide");
    }
    InteractionTable t;
    if (lower) {
      for (std::size_t i = 0; i < 20; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
          t.set_energy(kAminoAcids[i], kAminoAcids[j], rows[i][j]);
        }
      }
    } else {
      for (std::size_t i = 0; i < 20; ++i) {
        for (std::size_t j = 0; j < 20; ++j) {
          if (std::abs(rows[i][j] - rows[j][i]) > 1e-12) {
            throw DataError("interaction table: matrix is not symmetric at (" +
                            std::string(1, kAminoAcids[i]) + "," +
                            std::string(1, kAminoAcids[j]) + ")");
          }
        }
      }
      for (std::size_t i = 0; i < 20; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
          t.set_energy(kAminoAcids[i], kAminoAcids[j], rows[i][j]);
        }
      }
    }
    return t;
  }

  static InteractionTable load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open interaction table file: " + path);
    return load(in);
  }

 private:
  std::array<double, 400> e_;
};

}  // namespace qfold
