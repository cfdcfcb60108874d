#pragma once

#include <stdexcept>
#include <string>

namespace mirrorgen {

// Base of every error raised by the library. The CLI maps these to a
// nonzero exit status and prints what().
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operands belong to different algebras or have the wrong dimension.
class ConformanceError : public Error {
public:
    using Error::Error;
};

// Operation not supported by the data at hand (e.g. no point class).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

// Mathematical precondition violated (exp of a series with constant term,
// reciprocal of a non-unit, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Coefficient requested outside the exact window of a z-Laurent element.
class WindowError : public Error {
public:
    using Error::Error;
};

// Requested order exceeds what the available truncation supports.
class TruncationError : public Error {
public:
    using Error::Error;
};

// Incompatible policies, unknown variables, bad geometry data.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Malformed config or table text.
class ParseError : public Error {
public:
    using Error::Error;
};

// A class expected to be divisible by D is not.
class CancellationError : public Error {
public:
    using Error::Error;
};

// Invariants needed by an operation are not available.
class MissingDataError : public Error {
public:
    using Error::Error;
};

} // namespace mirrorgen
