#pragma once

#include <stdexcept>
#include <string>

namespace levyruin {

/// Argument outside the mathematical domain of an operation (precondition).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical routine could not deliver a trustworthy value.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or incomplete configuration record.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace levyruin
