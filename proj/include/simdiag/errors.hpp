#pragma once

#include <stdexcept>
#include <string>

namespace simdiag {

// Base class for every numerical failure raised by this library.  Contract
// violations (bad dimensions, invalid configuration) throw
// std::invalid_argument instead.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A matrix required to be invertible is numerically singular.
class SingularMatrixError : public Error {
public:
  using Error::Error;
};

// The underlying eigensolver failed to converge.
class EigenSolverError : public Error {
public:
  using Error::Error;
};

// The Khatri-Rao system backing a subspace projection lost column rank,
// i.e. the candidate diagonalizer has numerically dependent eigendirections.
class RankDeficientError : public Error {
public:
  using Error::Error;
};

// A stacked matrix handed to a fiber operation is not (numerically) the
// image of any tuple under the Kronecker-sum map.
class NotInRangeError : public Error {
public:
  using Error::Error;
};

// The recursive diagonalizer detected structure that contradicts exact
// simultaneous diagonalizability at the working tolerance.
class NotSimultaneouslyDiagonalizableError : public Error {
public:
  using Error::Error;
};

// The pseudo-common-diagonalizer fallback found no diagonalizable member.
class PcdAssumptionError : public Error {
public:
  using Error::Error;
};

// Malformed tuple file.
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace simdiag
