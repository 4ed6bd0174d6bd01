#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace illuminate {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A genome violated a structural rule of its domain.
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// A caller broke an operation's precondition.
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// Configuration rejected at validation time. `field` names the offending entry.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& message)
        : Error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class NotFound : public Error {
public:
    using Error::Error;
};

} // namespace illuminate
