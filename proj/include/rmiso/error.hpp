#pragma once

#include <stdexcept>
#include <string>

namespace rmiso {

/// Base of all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or mathematically invalid input (bad polynomial text, failed Weil check).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Newton stratum, splitting type or degree outside what the pipeline handles.
class UnsupportedStratum : public Error {
public:
    using Error::Error;
};

/// An enumeration or search budget was exhausted.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its domain.
class PreconditionViolation : public Error {
public:
    using Error::Error;
};

/// p-adic working precision too small; callers retry with a larger precision.
class PrecisionError : public Error {
public:
    using Error::Error;
};

}  // namespace rmiso
