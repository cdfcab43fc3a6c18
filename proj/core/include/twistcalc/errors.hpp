#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twistcalc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Elements or matrices over different rings were combined.
class DescriptorMismatch : public Error {
 public:
  using Error::Error;
};

class NotAUnit : public Error {
 public:
  using Error::Error;
};

class ZeroDivision : public Error {
 public:
  using Error::Error;
};

/// Violated precondition: bad index, wrong dimension, unsupported parameter.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A configured search or enumeration bound was hit.
class ResourceCapExceeded : public Error {
 public:
  using Error::Error;
};

/// A central-series layer where id - M_k is singular blocked a lifting step.
class SingularLayer : public Error {
 public:
  SingularLayer(std::size_t layer, const std::string& what)
      : Error(what), layer_(layer) {}
  std::size_t layer() const noexcept { return layer_; }

 private:
  std::size_t layer_;
};

}  // namespace twistcalc
