#pragma once

#include <stdexcept>
#include <string>

namespace orlicz {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the trusted evaluation range (u < 0, u > u_max, non-finite input).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Second derivative requested at a kink of a piecewise function.
class UndefinedDerivativeError : public Error {
public:
    using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// One of the constructive builders could not produce a valid function.
class ConstructionError : public Error {
public:
    using Error::Error;
};

/// Right inverse of M' could not be resolved to tolerance or the target is out of range.
class InversionError : public Error {
public:
    using Error::Error;
};

/// Root bracket could not be established.
class BracketError : public Error {
public:
    using Error::Error;
};

/// One-dimensional minimisation failed (objective not unimodal on the bracket).
class SearchError : public Error {
public:
    using Error::Error;
};

/// An integrand involving M'' is genuinely singular (f + alpha g = 0 where M''(0) = inf).
class SingularIntegrandError : public Error {
public:
    using Error::Error;
};

/// Weighted-composition recovery found a target cell covered by two basis images.
class AmbiguityError : public Error {
public:
    using Error::Error;
};

/// Malformed configuration or input document.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace orlicz
