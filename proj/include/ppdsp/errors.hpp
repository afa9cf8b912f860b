#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace ppdsp {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reference to an id that does not exist in the instance, or an instance
// that violates one of its structural invariants.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Malformed text input. `line()` is 1-based; 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Instance text that parses but violates the schema. `path()` names the
// offending field, e.g. "requests[3].pickup".
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class GenerationError : public Error {
 public:
  enum class Kind { TooFewNodes, InfeasibleRepetition, PairingStalled, BadParameter };

  GenerationError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

class EmitError : public Error {
 public:
  using Error::Error;
};

class OracleRefused : public Error {
 public:
  OracleRefused(double estimate, const std::string& what)
      : Error(what), estimate_(estimate) {}

  // Rough number of (assignment, route) candidates the request would need.
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

}  // namespace ppdsp
