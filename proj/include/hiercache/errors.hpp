#pragma once

#include <stdexcept>
#include <string>

namespace hiercache {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside its admissible range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Parameters are individually valid but jointly inconsistent.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

class DemandError : public Error {
 public:
  using Error::Error;
};

/// A requested byte split does not produce integral chunk sizes.
class DivisibilityError : public Error {
 public:
  using Error::Error;
};

/// A mirror could not rebuild a symbol it has to forward.
class ReconstructError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

class HullError : public Error {
 public:
  using Error::Error;
};

class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside the parameter family it is defined for.
class ScopeError : public Error {
 public:
  using Error::Error;
};

/// The decentralized rate function was evaluated at zero memory.
class SingularError : public Error {
 public:
  using Error::Error;
};

}  // namespace hiercache
