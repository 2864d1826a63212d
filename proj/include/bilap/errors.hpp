#pragma once

#include <stdexcept>
#include <string>

namespace bilap {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input carries spectral energy above the |k_i| < N/3 dealiasing cutoff.
class BandLimitExceeded : public Error {
 public:
  using Error::Error;
};

/// A parameter lies outside the range where the operator is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Spectrum extends past the dyadic scales a transform was built for.
class ScaleRangeError : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace bilap
