// Copyright (c) 2026 The qfold authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qfold/analysis.hpp"
#include "qfold/circuit.hpp"
#include "qfold/classical_energy.hpp"
#include "qfold/cobyla.hpp"
#include "qfold/diagonal_op.hpp"
#include "qfold/encoding.hpp"
#include "qfold/errors.hpp"
#include "qfold/exact.hpp"
#include "qfold/hamiltonian.hpp"
#include "qfold/interaction.hpp"
#include "qfold/kabsch.hpp"
#include "qfold/lattice.hpp"
#include "qfold/mitigation.hpp"
#include "qfold/objective.hpp"
#include "qfold/peptide.hpp"
#include "qfold/problem.hpp"
#include "qfold/sampling.hpp"
#include "qfold/solver.hpp"
#include "qfold/statevector.hpp"
#include "qfold/structure_io.hpp"
