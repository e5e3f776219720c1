#pragma once

#include <stdexcept>
#include <string>

namespace hk {

// Exit codes surfaced by the command line runner.
enum class ExitCode : int {
  kSuccess = 0,
  kConfigError = 1,
  kBudgetExceeded = 2,
  kDomainError = 3,
  kVerificationFailure = 4,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept { return ExitCode::kConfigError; }
};

// Bad user input: malformed polynomial, non-prime characteristic, inhomogeneous
// relation, exponent cap exceeded.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public ConfigError {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : ConfigError(msg + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Exponent or count arithmetic left the representable range.
class OverflowError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kBudgetExceeded; }
};

// Mathematical precondition violated, e.g. I + J is not of finite colength.
class DomainError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kDomainError; }
};

class VerificationFailure : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kVerificationFailure; }
};

}  // namespace hk
