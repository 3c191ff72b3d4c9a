#pragma once

#include <stdexcept>
#include <string>

namespace cubecut {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// The input lies outside the domain a function is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

class Collinear : public Error {
 public:
  using Error::Error;
};

class SymbolicDegeneracy : public Error {
 public:
  using Error::Error;
};

class MultipleRoots : public Error {
 public:
  using Error::Error;
};

class BothLabeled : public Error {
 public:
  using Error::Error;
};

class ClassifierMismatch : public Error {
 public:
  using Error::Error;
};

// An internal invariant failed. Always a bug or an unsupported input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace cubecut
