#pragma once

#include <stdexcept>
#include <string>

namespace hplane {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed input: violated preconditions, bad specs, unknown fields.
class InputError : public Error {
public:
  using Error::Error;
};

// A truncated infinite product could not be bounded below the tolerance.
class TailNotCertified : public Error {
public:
  using Error::Error;
};

// Root finder, quadrature or extrapolation ladder did not settle.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

// A post-condition checked on samples or structurally did not hold.
class CertificationError : public Error {
public:
  using Error::Error;
};

}  // namespace hplane
