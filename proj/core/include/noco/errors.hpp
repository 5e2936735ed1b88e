// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace noco {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A hyperparameter is outside its documented range.
struct InvalidParams : Error {
  using Error::Error;
};

// Fusion was asked to aggregate an empty association set.
struct EmptyAssociation : Error {
  EmptyAssociation() : Error("association set is empty") {}
};

// An aggregate operation received no samples.
struct EmptyInput : Error {
  using Error::Error;
};

// Literal-mode correction produced an instance with end <= start.
struct DegenerateResult : Error {
  using Error::Error;
};

// The requested instances cannot fit in the configured video length.
struct InfeasibleConfig : Error {
  using Error::Error;
};

// Sweep was asked to vary a parameter it does not know.
struct UnknownParam : Error {
  using Error::Error;
};

// Malformed input line; `line` is 1-based.
struct ParseError : Error {
  ParseError(std::size_t line_no, const std::string& reason)
      : Error("line " + std::to_string(line_no) + ": " + reason), line(line_no) {}
  std::size_t line;
};

// Malformed or inconsistent configuration.
struct ConfigError : Error {
  explicit ConfigError(const std::string& reason) : Error(reason), line(0) {}
  ConfigError(std::size_t line_no, const std::string& reason)
      : Error("line " + std::to_string(line_no) + ": " + reason), line(line_no) {}
  std::size_t line;
};

}  // namespace noco
