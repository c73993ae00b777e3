// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace pfq {

/// Base class of everything this library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters or violated domain constraints (CLI exit code 2).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Gamma evaluated at a nonpositive integer.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Series or quadrature failed to converge within its budget (exit code 3).
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// A result magnitude left the representable range (exit code 3).
class OverflowError : public Error {
public:
    using Error::Error;
};

} // namespace pfq
