// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace kamred {

// Error categories mirrored by the C API status codes.
enum class ErrorKind {
  Io,        // file not found, malformed input files
  Config,    // parameter validation failures
  Domain,    // operation preconditions violated (shapes, structure, ranges)
  Numeric,   // series divergence, resonant divisors, non-finite values
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

} // namespace kamred
