#pragma once

#include <stdexcept>
#include <string>

namespace graspbo {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Analytic SDF gradient vanished (e.g. exact box center); callers fall back
/// to finite differences.
struct DegenerateGradient : Error {
  using Error::Error;
};

/// Palm position coincides with the alignment target.
struct DegeneratePose : Error {
  using Error::Error;
};

struct JointLimit : Error {
  using Error::Error;
};

struct EmptyContacts : Error {
  using Error::Error;
};

/// Input points are affinely dependent; the hull has no d-dimensional interior.
struct DegenerateHull : Error {
  using Error::Error;
};

struct OriginOutside : Error {
  using Error::Error;
};

/// Kernel matrix stayed non-positive-definite through jitter escalation.
struct SingularKernel : Error {
  using Error::Error;
};

struct NoContacts : Error {
  using Error::Error;
};

/// Success counts sum to zero; weights undefined.
struct AllZero : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace graspbo
