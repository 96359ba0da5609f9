#pragma once

#include <stdexcept>
#include <string>

namespace nsmp {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class GridMismatch : public Error {
public:
  using Error::Error;
};

class InvalidGrid : public Error {
public:
  using Error::Error;
};

/// Right-hand side of a Neumann/periodic Poisson problem has nonzero mean.
class CompatibilityViolation : public Error {
public:
  CompatibilityViolation(const std::string& what, double defect)
      : Error(what), defect_(defect) {}
  double defect() const { return defect_; }

private:
  double defect_;
};

class NonConvergence : public Error {
public:
  using Error::Error;
};

/// Normal component of a field on the wall is not zero.
class BoundaryFluxViolation : public Error {
public:
  using Error::Error;
};

/// Input data assumption that a scenario must satisfy.
enum class Assumption { None, SolenoidalForcing, SolenoidalInitialData, NoSlipInitialData, TimeStep };

class ValidationError : public Error {
public:
  explicit ValidationError(const std::string& what, Assumption violated = Assumption::None)
      : Error(what), violated_(violated) {}
  Assumption violated() const { return violated_; }

private:
  Assumption violated_;
};

/// Time step exceeds the advective or diffusive stability limit.
class CflViolation : public ValidationError {
public:
  explicit CflViolation(const std::string& what) : ValidationError(what, Assumption::TimeStep) {}
};

class BlowUp : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, int line, std::string key)
      : Error(what), line_(line), key_(std::move(key)) {}
  int line() const { return line_; }
  const std::string& key() const { return key_; }

private:
  int line_;
  std::string key_;
};

}  // namespace nsmp
