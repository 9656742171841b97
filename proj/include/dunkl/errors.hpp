// Exception hierarchy. Each class maps onto one CLI exit code.
#pragma once

#include <stdexcept>
#include <string>

namespace dunkl {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Bad grid sizes, empty radius lists, unknown suite names.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Mismatched grids or parameters between operands.
class ContractError : public Error {
public:
    using Error::Error;
};

// Non-finite samples, malformed input files.
class DataError : public Error {
public:
    using Error::Error;
};

} // namespace dunkl
