#pragma once

#include <stdexcept>
#include <string>

namespace pxp {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested size exceeds what the implementation can represent.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// A bit pattern or amplitude vector that does not live in the blockaded space.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

/// An argument outside its mathematical domain (site index, angle, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Time stepping lost unitarity beyond tolerance.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

class DecompositionError : public Error {
 public:
  using Error::Error;
};

/// Fewer than two dominant quasi-energy levels: no arc to measure a spacing on.
class NoArcError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pxp
