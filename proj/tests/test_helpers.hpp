#pragma once

#include <string>

#include "qfold/interaction.hpp"
#include "qfold/peptide.hpp"
#include "qfold/problem.hpp"

namespace qfold_test {

inline const qfold::InteractionTable& mj_table() {
  static qfold::InteractionTable table = qfold::InteractionTable::load_file(QFOLD_MJ_TABLE);
  return table;
}

inline qfold::Peptide ypyfip() { return qfold::Peptide("YPYFIP"); }

inline qfold::Peptide ypyfip_ipfy() {
  return qfold::Peptide("YPYFIP", {std::nullopt, 'I', 'P', 'F', 'Y', std::nullopt});
}

inline const qfold::FoldingProblem& problem6() {
  static qfold::FoldingProblem p =
      qfold::FoldingProblem::create(ypyfip(), qfold::PenaltyConfig{}, mj_table());
  return p;
}

inline const qfold::FoldingProblem& problem17() {
  static qfold::FoldingProblem p =
      qfold::FoldingProblem::create(ypyfip_ipfy(), qfold::PenaltyConfig{}, mj_table());
  return p;
}

inline std::string data_path(const std::string& rel) {
  return std::string(QFOLD_DATA_DIR) + "/" + rel;
}

}  // namespace qfold_test
