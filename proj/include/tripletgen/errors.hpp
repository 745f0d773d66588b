#pragma once

#include <stdexcept>
#include <string>

namespace tripletgen {

/// Input outside the mathematical domain of an operation (negative energy,
/// eta >= 1, zero cross-section, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Missing, duplicated or inconsistent configuration.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values during integration, or a fit that cannot be performed.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace tripletgen
