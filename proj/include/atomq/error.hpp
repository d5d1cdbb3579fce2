// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace atomq {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the 1-based line number when known (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Input that parses but violates a documented invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical check failed (non-Hermitian operator, singular map, variational bound...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Configuration or usage problem (unknown key, bad value, conflicting options).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace atomq
