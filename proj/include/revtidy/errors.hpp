#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace revtidy {

using cplx = std::complex<double>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyList : public Error {
 public:
  using Error::Error;
};

class NotOrthonormal : public Error {
 public:
  using Error::Error;
};

class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

class WidthMismatch : public Error {
 public:
  using Error::Error;
};

class NonZeroAncilla : public Error {
 public:
  using Error::Error;
};

class MalformedProgram : public Error {
 public:
  using Error::Error;
};

class MissingRoles : public Error {
 public:
  using Error::Error;
};

class InvalidGate : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

/// No unitary can map the given input family to the given output family:
/// the pairwise inner products disagree at (i, j) by delta.
class GramMismatch : public Error {
 public:
  GramMismatch(std::size_t i, std::size_t j, cplx delta);

  std::size_t i() const { return i_; }
  std::size_t j() const { return j_; }
  cplx delta() const { return delta_; }

 private:
  std::size_t i_;
  std::size_t j_;
  cplx delta_;
};

}  // namespace revtidy
