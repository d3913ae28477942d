#pragma once

#include <stdexcept>
#include <string>

namespace scenecrf {

// Malformed input file (bad JSON, wrong shape, missing required field).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally well-formed input that violates a scene invariant.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A graph node or edge has no probability entry backing it.
class MissingProbabilityError : public std::runtime_error {
 public:
  explicit MissingProbabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace scenecrf
