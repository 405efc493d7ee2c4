#pragma once

#include <stdexcept>
#include <string>

#include "cbugscan/location.hpp"

namespace cbugscan {

/// Base class of every error raised by the framework.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad command line, compilation database or checker configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Lexical or syntax error; carries the location of the offending token.
class SyntaxError : public Error {
public:
  SyntaxError(SourceLocation where, const std::string &what)
      : Error(where.str() + ": " + what), location(std::move(where)) {}

  SourceLocation location;
};

/// The external preprocessor command failed.
class PreprocessError : public Error {
public:
  using Error::Error;
};

/// CFG construction failed (e.g. goto to an undefined label).
class CfgError : public Error {
public:
  using Error::Error;
};

/// Checker registry misuse: duplicate or unknown checker names.
class RegistryError : public Error {
public:
  using Error::Error;
};

} // namespace cbugscan
