#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace matbreak {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidModulus : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch() : Error("dimension mismatch") {}
  using Error::Error;
};

class ModulusMismatch : public Error {
 public:
  ModulusMismatch() : Error("modulus mismatch") {}
};

/// Raised by scalar inversion. Over a composite modulus the gcd is a
/// nontrivial factor of it.
class NonUnit : public Error {
 public:
  explicit NonUnit(std::uint64_t g)
      : Error("element is not a unit (gcd=" + std::to_string(g) + ")"), gcd(g) {}
  std::uint64_t gcd;
};

class NotInvertible : public Error {
 public:
  explicit NotInvertible(std::optional<std::uint64_t> f = std::nullopt)
      : Error(f ? "matrix is not invertible (factor=" + std::to_string(*f) + ")"
                : std::string("matrix is not invertible")),
        factor(f) {}
  /// Set only when a nontrivial divisor of the modulus turned up.
  std::optional<std::uint64_t> factor;
};

class NotAField : public Error {
 public:
  NotAField() : Error("operation requires a prime modulus") {}
};

class Inconsistent : public Error {
 public:
  Inconsistent() : Error("linear system is inconsistent") {}
};

class ModuliNotCoprime : public Error {
 public:
  ModuliNotCoprime() : Error("moduli are not coprime") {}
};

class NotADivisor : public Error {
 public:
  NotADivisor() : Error("reduction modulus does not divide the matrix modulus") {}
};

class DegenerateDim : public Error {
 public:
  DegenerateDim() : Error("dimension must be at least 2") {}
};

class BadFactors : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Bad command-line or caller-supplied configuration.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace matbreak
