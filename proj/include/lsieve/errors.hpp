#pragma once

#include <stdexcept>
#include <string>

namespace lsieve {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside the region where a statement is defined
/// (e.g. 8Q^2 > N for the restricted-support bound).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Coefficient data violates a support hypothesis of an inequality.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A requested size exceeds the configured memory budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace lsieve
