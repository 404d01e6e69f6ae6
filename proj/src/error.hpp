#pragma once

#include <stdexcept>
#include <string>

#include "ncphase/ncphase.h"

namespace ncphase {

// Every failure inside the core is an Error carrying the status code that the
// C boundary hands back to callers.
class Error : public std::runtime_error {
 public:
  Error(ncp_status code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ncp_status code() const noexcept { return code_; }

 private:
  ncp_status code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(NCP_ERR_DOMAIN, what) {}
};

class OverflowError : public Error {
 public:
  explicit OverflowError(const std::string& what) : Error(NCP_ERR_OVERFLOW, what) {}
};

class SingularityError : public Error {
 public:
  explicit SingularityError(const std::string& what) : Error(NCP_ERR_SINGULAR, what) {}
};

class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& what) : Error(NCP_ERR_BUDGET, what) {}
};

class MissingAsymptoteError : public Error {
 public:
  explicit MissingAsymptoteError(const std::string& what)
      : Error(NCP_ERR_MISSING_ASYMPTOTE, what) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(NCP_ERR_DIMENSION, what) {}
};

class DivisionByZeroError : public Error {
 public:
  explicit DivisionByZeroError(const std::string& what) : Error(NCP_ERR_DIVISION_BY_ZERO, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(NCP_ERR_CONFIG, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(NCP_ERR_IO, what) {}
};

class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string& what) : Error(NCP_ERR_INVALID_ARGUMENT, what) {}
};

class InvalidHandleError : public Error {
 public:
  explicit InvalidHandleError(const std::string& what) : Error(NCP_ERR_INVALID_HANDLE, what) {}
};

}  // namespace ncphase
