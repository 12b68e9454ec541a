#pragma once

#include <stdexcept>
#include <string>

namespace carnot {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A point, covector or measure does not conform to the group layout.
class LayoutError : public Error {
public:
  using Error::Error;
};

/// An argument lies outside the documented domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A pair lies on the cut locus where the requested quantity is undefined.
class CutLocusError : public Error {
public:
  using Error::Error;
};

/// An internal invariant failed.
class InternalError : public Error {
public:
  using Error::Error;
};

/// Malformed input document, CSV or command-line value.
class ParseError : public Error {
public:
  using Error::Error;
};

}  // namespace carnot
