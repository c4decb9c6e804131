#pragma once

#include <stdexcept>
#include <string>

namespace octa {

// Base of every library error. The CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Input outside the mathematical domain of an operation (collisions, unknown labels, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

// Root bracketing failed.
class SearchFailure : public Error {
public:
  using Error::Error;
};

// Matrix or configuration of the wrong shape or structure.
class ShapeError : public Error {
public:
  using Error::Error;
};

class InvalidCharacter : public Error {
public:
  using Error::Error;
};

class LabelingError : public Error {
public:
  using Error::Error;
};

class SamplingError : public Error {
public:
  using Error::Error;
};

class AmplitudeError : public Error {
public:
  using Error::Error;
};

// An exact identity that must hold failed; a bug, not a user error.
class ConsistencyPanic : public Error {
public:
  using Error::Error;
};

// Orbit-type product left the known catalog.
class CatalogError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  ConfigError(const std::string& what, int line) : Error(what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

}  // namespace octa
