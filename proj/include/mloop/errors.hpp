#pragma once

#include <stdexcept>
#include <string>

namespace mloop {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// lie algebra construction / automorphisms
struct AntisymmetryViolation : Error {
  using Error::Error;
};
struct JacobiViolation : Error {
  using Error::Error;
};
struct NotAutomorphism : Error {
  using Error::Error;
};
struct OrderMismatch : Error {
  using Error::Error;
};
struct NonCommuting : Error {
  using Error::Error;
};

// laurent ring / elements
struct DegreeCapExceeded : Error {
  using Error::Error;
};
struct NotHomogeneous : Error {
  using Error::Error;
};
struct MixedParents : Error {
  using Error::Error;
};

// cohomology
struct WindowEmpty : Error {
  using Error::Error;
};
struct Unstable : Error {
  using Error::Error;
};
struct NotACocycle : Error {
  using Error::Error;
};

// config / io
struct ConfigError : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

} // namespace mloop
