#pragma once

#include <stdexcept>
#include <string>

namespace cmtfa {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An edge weight outside 0 < |alpha_i| < 1, or too few entries.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A branch-specific routine was called on a vector of the other branch.
class BranchMismatch : public Error {
 public:
  using Error::Error;
};

/// A problem size the routine does not support.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Operands whose shapes disagree.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace cmtfa
