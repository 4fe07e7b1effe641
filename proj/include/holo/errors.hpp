#pragma once

#include <stdexcept>
#include <string>

namespace holo {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input outside an operation's domain (bad parameter, point outside the bulk, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// An iterative numerical procedure failed to converge or to bracket.
class NumericsError : public Error {
public:
    using Error::Error;
};

// A root bracket does not actually straddle a sign or phase change.
class BracketError : public Error {
public:
    using Error::Error;
};

// A parameter sweep could not produce a single valid record.
class ScanError : public Error {
public:
    using Error::Error;
};

// File output or input failure.
class IoError : public Error {
public:
    using Error::Error;
};

// Unusable run configuration (CLI flags or config file).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Geometry validation failure, tagged with the violated invariant.
class GeometryError : public DomainError {
public:
    enum class Kind { NonAsymptoticallyAdS, NonPositiveParameter, NonMonotoneProfile };

    GeometryError(Kind kind, const std::string& what) : DomainError(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

}  // namespace holo
