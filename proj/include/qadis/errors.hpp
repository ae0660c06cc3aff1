#pragma once

#include <stdexcept>
#include <string>

namespace qadis {

/// Requested computation exceeds a hard size limit (e.g. too many qubits
/// for exhaustive enumeration or statevector propagation).
class CapabilityError : public std::runtime_error {
public:
    explicit CapabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or inconsistent external data (files, records, schemas).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Inputs that should describe the same object disagree (e.g. a
/// configuration energy matching no spectrum level).
class ConsistencyError : public std::runtime_error {
public:
    explicit ConsistencyError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Iterative refinement failed to converge within its hard cap.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A Boltzmann fit has no finite solution (empirical mean energy at or
/// outside the spectral extremes); `sign` is +1 for beta -> +inf, -1 for -inf.
class UnfittableError : public std::runtime_error {
public:
    UnfittableError(const std::string& msg, int sign_)
        : std::runtime_error(msg), sign(sign_) {}
    int sign;
};

}  // namespace qadis
