// Copyright (c) 2026 The qfold authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qfold/errors.hpp"
#include "qfold/lattice.hpp"
#include "qfold/peptide.hpp"

namespace qfold {

using Point3 = std::array<double, 3>;

/// Labeled point set: one pseudo-atom per bead, main chain first, then side
/// beads in host order.
struct StructurePoints {
  std::vector<std::string> labels;
  std::vector<Point3> points;
};

/// Scales a lattice conformation into Cartesian coordinates. The default
/// lattice constant 1.0 keeps the integer lattice (bond length sqrt(3));
/// 1/sqrt(3) gives unit bond length.
inline StructurePoints to_points(const Conformation& conf, const Peptide& peptide,
                                 double lattice_constant = 1.0) {
  StructurePoints out;
  auto push = [&](const Vec3& v, const std::string& label) {
    out.labels.push_back(label);
    out.points.push_back({lattice_constant * static_cast<double>(v[0]),
                          lattice_constant * static_cast<double>(v[1]),
                          lattice_constant * static_cast<double>(v[2])});
  };
  for (std::size_t k = 0; k < conf.main_coords.size(); ++k) {
    push(conf.main_coords[k], std::string(1, peptide.main_residue(static_cast<int>(k))));
  }
  for (std::size_t k = 0; k < conf.side_coords.size(); ++k) {
    if (conf.side_coords[k]) {
      push(*conf.side_coords[k], std::string(1, peptide.side_residue(static_cast<int>(k))));
    }
  }
  return out;
}

inline void write_xyz(std::ostream& os, const StructurePoints& s,
                      const std::string& comment = "") {
  os << s.points.size() << "\n" << comment << "\n";
  char buf[128];
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s %.6f %.6f %.6f\n", s.labels[i].c_str(),
                  s.points[i][0], s.points[i][1], s.points[i][2]);
    os << buf;
  }
}

inline void write_pdb(std::ostream& os, const StructurePoints& s) {
  char buf[96];
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    std::snprintf(buf, sizeof buf,
                  "HETATM%5zu  CA  %3s A%4zu    %8.3f%8.3f%8.3f  1.00  0.00\n",
                  i + 1, s.labels[i].c_str(), i + 1, s.points[i][0], s.points[i][1],
                  s.points[i][2]);
    os << buf;
  }
  os << "END\n";
}

inline StructurePoints read_xyz(std::istream& is) {
  std::size_t count = 0;
  std::string line;
  if (!std::getline(is, line)) throw DataError("xyz: empty file");
  {
    std::istringstream ss(line);
    if (!(ss >> count)) throw DataError("xyz: first line must be the atom count");
  }
  std::getline(is, line);  // comment
  StructurePoints s;
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(is, line)) throw DataError("xyz: truncated file");
    std::istringstream ss(line);
    std::string label;
    Point3 p{};
    if (!(ss >> label >> p[0] >> p[1] >> p[2])) throw DataError("xyz: malformed atom line");
    s.labels.push_back(label);
    s.points.push_back(p);
  }
  return s;
}

inline StructurePoints read_pdb(std::istream& is) {
  StructurePoints s;
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind("HETATM", 0) != 0 && line.rfind("ATOM", 0) != 0) continue;
    if (line.size() < 54) throw DataError("pdb: truncated atom record");
    Point3 p{std::stod(line.substr(30, 8)), std::stod(line.substr(38, 8)),
             std::stod(line.substr(46, 8))};
    std::string label = line.size() >= 20 ? line.substr(17, 3) : "UNK";
    while (!label.empty() && label.back() == ' ') label.pop_back();
    while (!label.empty() && label.front() == ' ') label.erase(label.begin());
    s.labels.push_back(label);
    s.points.push_back(p);
  }
  if (s.points.empty()) throw DataError("pdb: no atom records found");
  return s;
}

/// Reads a structure file, dispatching on extension (.xyz or .pdb).
inline StructurePoints read_structure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open structure file: " + path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".pdb") return read_pdb(in);
  return read_xyz(in);
}

}  // namespace qfold
