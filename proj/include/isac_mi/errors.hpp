#pragma once

#include <stdexcept>
#include <string>

namespace isac_mi {

/// Base class of every error raised by the library.
class IsacError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or violated precondition.
class DomainError : public IsacError {
 public:
  using IsacError::IsacError;
};

/// Malformed or inconsistent scenario configuration.
class ConfigError : public IsacError {
 public:
  using IsacError::IsacError;
};

/// Noise covariance singular (minimum eigenvalue at or below 1e-14).
class DegenerateNoiseError : public IsacError {
 public:
  using IsacError::IsacError;
};

/// Frame too short to carry the requested probing covariance.
class InfeasibleFrameError : public IsacError {
 public:
  using IsacError::IsacError;
};

/// Slope requested outside the high-SNR regime or from too few samples.
class UnreliableRegimeError : public IsacError {
 public:
  using IsacError::IsacError;
};

}  // namespace isac_mi
