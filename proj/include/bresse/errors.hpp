#pragma once

#include <stdexcept>
#include <string>

namespace bresse {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when (i*lambda - A_h) is numerically singular, i.e. i*lambda sits on
/// (or within round-off of) the discrete spectrum.
class NearSingularError : public Error {
 public:
  NearSingularError(double lambda, const std::string& what)
      : Error(what), lambda_(lambda) {}
  double lambda() const noexcept { return lambda_; }

 private:
  double lambda_;
};

class CoercivityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace bresse
