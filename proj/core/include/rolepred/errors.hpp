#pragma once

#include <stdexcept>
#include <string>

namespace rolepred {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file (JSON syntax, missing keys, wrong types).
class ParseError : public Error {
  public:
    using Error::Error;
};

/// Structurally valid input that violates a documented invariant.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// A model backend could not be reached or returned a broken response.
class TransportError : public Error {
  public:
    using Error::Error;
};

}  // namespace rolepred
