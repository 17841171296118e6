#pragma once

#include <stdexcept>
#include <string>

namespace stabfv {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class TopologyError : public Error {
 public:
  using Error::Error;
};

class DegenerateSystemError : public Error {
 public:
  using Error::Error;
};

class InadmissibleGainError : public Error {
 public:
  using Error::Error;
};

class DryStateError : public Error {
 public:
  using Error::Error;
};

class ClosureError : public Error {
 public:
  using Error::Error;
};

class UndefinedRateError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A non-finite value appeared during time stepping.
class BlowUpError : public Error {
 public:
  BlowUpError(int component, int j, int k, double t);

  int component() const noexcept { return component_; }
  int j() const noexcept { return j_; }
  int k() const noexcept { return k_; }
  double time() const noexcept { return t_; }

 private:
  int component_;
  int j_;
  int k_;
  double t_;
};

}  // namespace stabfv
