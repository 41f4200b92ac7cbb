#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace isoflect {

using Complex = std::complex<double>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Evaluation hit a pole, branch point or left the function's domain.
class DomainError : public Error {
 public:
  DomainError(const std::string& msg, Complex where);
  Complex where() const { return where_; }

 private:
  Complex where_;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// A geometric precondition (boundary height, straightness, ...) failed.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace isoflect
