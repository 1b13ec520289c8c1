#pragma once

#include <stdexcept>
#include <string>

namespace kinkchain {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SizeMismatchError : public Error {
 public:
  using Error::Error;
};

class ParameterDomainError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double last_delta, int iterations)
      : Error(what), last_delta_(last_delta), iterations_(iterations) {}
  [[nodiscard]] double last_delta() const noexcept { return last_delta_; }
  [[nodiscard]] int iterations() const noexcept { return iterations_; }

 private:
  double last_delta_;
  int iterations_;
};

class InvariantViolationError : public Error {
 public:
  using Error::Error;
};

class InvalidFrameError : public Error {
 public:
  using Error::Error;
};

class SymmetryViolationError : public Error {
 public:
  using Error::Error;
};

class DegenerateMomentumError : public Error {
 public:
  using Error::Error;
};

class GridMismatchError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace kinkchain
