#pragma once

#include <stdexcept>
#include <string>

namespace fracgame {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidGame : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidPartition : public Error {
 public:
  using Error::Error;
};

/// A requested enumeration exceeds the configured size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class InfeasibleSolution : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

/// Float-backend pivoting lost track of feasibility.
class NumericFailure : public Error {
 public:
  using Error::Error;
};

class RBarOutOfRange : public Error {
 public:
  using Error::Error;
};

class AlphaOutOfRange : public Error {
 public:
  using Error::Error;
};

class InvalidCurve : public Error {
 public:
  using Error::Error;
};

class InvalidDensity : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace fracgame
