#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace stochhyp {

/// Argument outside the mathematical domain of an operation (|z| > 1, k > K, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller passed inconsistent shapes or sizes.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One or more configuration violations. Every violation is kept, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  explicit ConfigError(const std::string& violation)
      : ConfigError(std::vector<std::string>{violation}) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Non-finite value detected while time marching.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::string location)
      : std::runtime_error(what), location_(std::move(location)) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

}  // namespace stochhyp
