#pragma once

#include <stdexcept>
#include <string>

namespace polysim {

/// Invalid configuration input (bad file, field out of range). CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid argument to an operation at runtime. CLI exit code 1.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace polysim
