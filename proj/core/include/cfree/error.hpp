#pragma once

#include <stdexcept>
#include <string>

namespace cfree {

/// Base class for every error raised by the library.  The CLI maps these to
/// exit code 1 and reports `kind()` alongside the message.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual const char* kind() const noexcept { return "error"; }
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "dimension_mismatch"; }
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "index_out_of_range"; }
};

class TruncationError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "truncation"; }
};

class PreconditionError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "precondition"; }
};

/// Raised when an exact structural identity that must hold by construction
/// is found violated.
class InconsistencyError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "inconsistency"; }
};

class ParseError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "parse"; }
};

}  // namespace cfree
