#pragma once

#include <stdexcept>
#include <string>

namespace paremio {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration: missing paths, malformed manifests, invalid flags.
/// Maps to CLI exit code 2.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Malformed or inconsistent data that prevents producing a result.
/// Maps to CLI exit code 1.
class DataError : public Error {
public:
  using Error::Error;
};

} // namespace paremio
