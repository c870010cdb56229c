#pragma once

#include <stdexcept>
#include <string>

namespace qdq {

/// Base class for every error thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonSquareError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

/// A linear solve hit a pivot below the singularity threshold.
class SingularError : public Error {
 public:
  using Error::Error;
};

/// An operator set failed the minimality (linear independence) check.
class SingularSetError : public Error {
 public:
  using Error::Error;
};

/// Family parameters violate a feasibility constraint. Carries the name of
/// the offending parameter for machine-readable reporting.
class InfeasibleParamsError : public Error {
 public:
  InfeasibleParamsError(std::string field, const std::string& message)
      : Error(message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class NoRealSolutionError : public Error {
 public:
  using Error::Error;
};

class UnknownPresetError : public Error {
 public:
  using Error::Error;
};

class NotOrthonormalBaseError : public Error {
 public:
  using Error::Error;
};

class DegenerateTransformError : public Error {
 public:
  using Error::Error;
};

class CertificationFailedError : public Error {
 public:
  using Error::Error;
};

class MalformedDocumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace qdq
