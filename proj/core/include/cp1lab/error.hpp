#pragma once

#include <stdexcept>
#include <string>

namespace cp1lab {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside an operation's domain (degenerate axis, pole in H, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure did not reach its accuracy contract.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Invalid or unreadable configuration / input document.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace cp1lab
