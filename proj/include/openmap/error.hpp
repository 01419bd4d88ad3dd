#pragma once

#include <stdexcept>
#include <string>

namespace openmap {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// numerical-invariant violations (CLI exit code 3)
struct InvariantError : Error {
    using Error::Error;
};

struct NotHermitianError : InvariantError {
    using InvariantError::InvariantError;
};

struct BadDimsError : InvariantError {
    using InvariantError::InvariantError;
};

struct BadSiteError : InvariantError {
    using InvariantError::InvariantError;
};

struct BlochNormError : InvariantError {
    using InvariantError::InvariantError;
};

struct StateValidationError : InvariantError {
    using InvariantError::InvariantError;
};

struct DegenerateA1Error : InvariantError {
    using InvariantError::InvariantError;
};

// configuration problems (CLI exit code 2)
struct ConfigError : Error {
    using Error::Error;
};

struct ConfigParseError : ConfigError {
    using ConfigError::ConfigError;
};

struct ConfigInvalidError : ConfigError {
    using ConfigError::ConfigError;
};

// filesystem problems (CLI exit code 4)
struct IoError : Error {
    using Error::Error;
};

}  // namespace openmap
