// Copyright 2026 The HQS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace hqs {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: documents, item files, arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A computation produced or consumed a non-finite value.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace hqs
