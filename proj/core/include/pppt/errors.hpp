#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pppt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document (JSON shape, rational syntax, unknown labels).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A model failed its structural invariants. `violations()` lists each one.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out = "validation failed";
    for (const auto& item : items) out += "; " + item;
    return out;
  }

  std::vector<std::string> violations_;
};

/// Conditioning on evidence of probability zero.
class ZeroEvidence : public Error {
 public:
  ZeroEvidence() : Error("evidence has probability zero") {}
};

/// An exhaustive oracle was asked to enumerate past its configured guard.
class EnumerationTooLarge : public Error {
 public:
  using Error::Error;
};

/// A machine was stepped from a (state, symbol, bits) key it does not define.
class MissingTransition : public Error {
 public:
  using Error::Error;
};

class TooManyVariables : public Error {
 public:
  using Error::Error;
};

}  // namespace pppt
