#ifndef VIRASYM_ERRORS_HPP
#define VIRASYM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace virasym {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A basis symbol is not allowed under the algebra in use.
class InvalidSymbol : public Error {
public:
  using Error::Error;
};

/// The operation is only defined for some of the algebra variants.
class UnsupportedAlgebra : public Error {
public:
  using Error::Error;
};

/// A map was evaluated on a symbol outside its window.
class OutOfWindow : public Error {
public:
  using Error::Error;
};

/// Degree arithmetic left the configured index range.
class IndexOverflow : public Error {
public:
  using Error::Error;
};

class WindowTooSmall : public Error {
public:
  using Error::Error;
};

class InvalidCore : public Error {
public:
  using Error::Error;
};

/// Malformed text/JSON input (elements, map files, rationals).
class ParseError : public Error {
public:
  using Error::Error;
};

/// Map construction with missing, duplicate or extraneous entries.
class MapConstructionError : public Error {
public:
  using Error::Error;
};

} // namespace virasym

#endif // VIRASYM_ERRORS_HPP
