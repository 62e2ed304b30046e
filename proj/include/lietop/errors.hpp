#pragma once

#include <stdexcept>
#include <string>

namespace lietop {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite value produced by a user evaluator or a derivative.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimError : public Error {
 public:
  using Error::Error;
};

class DegreeError : public Error {
 public:
  using Error::Error;
};

class ParamError : public Error {
 public:
  using Error::Error;
};

class ArgError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class SingularError : public Error {
 public:
  using Error::Error;
};

class ChartSingularError : public SingularError {
 public:
  using SingularError::SingularError;
};

class BlowupError : public Error {
 public:
  BlowupError(double time, const std::string& what)
      : Error(what), time_(time) {}
  /// Last time at which the state was still finite.
  double time() const { return time_; }

 private:
  double time_;
};

class PreconditionError : public Error {
 public:
  PreconditionError(std::size_t probe, const std::string& what)
      : Error(what), probe_(probe) {}
  std::size_t probe() const { return probe_; }

 private:
  std::size_t probe_;
};

}  // namespace lietop
