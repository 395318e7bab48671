// Copyright (c) 2026 The qfold authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace qfold {

/// Base class for all qfold errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (bad instance file, bad config, ...).
struct ValidationError : Error {
  using Error::Error;
};

/// Structurally valid data that violates a schema or numeric contract.
struct DataError : Error {
  using Error::Error;
};

/// Request exceeds a hard resource guard (qubit caps, matrix sizes).
struct CapacityError : Error {
  using Error::Error;
};

/// Numerical failure inside a computation (non-finite objective, singular
/// calibration, ...).
struct ComputeError : Error {
  using Error::Error;
};

}  // namespace qfold
