#pragma once

#include <stdexcept>
#include <string>

namespace quatsuper {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands from different rings/algebras, bad lengths, invalid parameters.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A solver was asked to work over a ring that is not a field.
class UnsupportedRing : public Error {
 public:
  using Error::Error;
};

class EnumerationTooLarge : public Error {
 public:
  using Error::Error;
};

/// superbracket was handed a map that fails the superderivation check.
class InputNotDerivation : public Error {
 public:
  using Error::Error;
};

/// A postcondition that a theorem guarantees did not hold. Fatal.
class InternalContradiction : public Error {
 public:
  using Error::Error;
};

}  // namespace quatsuper
