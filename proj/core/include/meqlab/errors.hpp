#pragma once

#include <stdexcept>
#include <string>

namespace meqlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownSystemError : public Error {
 public:
  explicit UnknownSystemError(const std::string& id) : Error("unknown system id '" + id + "'") {}
};

class UnknownFactorMapError : public Error {
 public:
  explicit UnknownFactorMapError(const std::string& id) : Error("unknown factor map id '" + id + "'") {}
};

class CrossSystemError : public Error {
 public:
  CrossSystemError(const std::string& a, const std::string& b)
      : Error("points belong to different systems ('" + a + "' vs '" + b + "')") {}
};

/// A caller-side contract was broken (bad tolerance ordering, eps <= 0, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class CompositionMismatchError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace meqlab
