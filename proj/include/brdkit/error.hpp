#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace brdkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax or grammar violation in a formula string.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownAtomError : public Error {
 public:
  using Error::Error;
};

/// Conditioning on a set of zero prior mass.
class ZeroConditionError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or subset search would exceed its configured bound.
class BoundError : public Error {
 public:
  using Error::Error;
};

/// Malformed or invalid case document.
class CaseError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace brdkit
