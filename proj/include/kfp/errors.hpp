#pragma once

#include <stdexcept>
#include <string>

namespace kfp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside the domain where a formula is defined (a <= 0, b = 0 where the
// closed form divides by b, |A| = 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ResolventMismatch : public Error {
 public:
  using Error::Error;
};

class DegenerateSpectrum : public Error {
 public:
  using Error::Error;
};

class OutOfRadius : public Error {
 public:
  using Error::Error;
};

class Overflow : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace kfp
