#pragma once

/**
 * @file errors.hpp
 * @brief Exception hierarchy shared by every circlewalk module.
 *
 * Each failure mode of the library gets its own type so callers (notably
 * the CLI, which maps them onto exit codes) can dispatch on the kind of
 * error without parsing messages.
 */

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace circlewalk {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rejected moduli. The CLI reports both as "invalid modulus".
class InvalidModulus : public Error {
public:
    using Error::Error;
};
class NotPrime : public InvalidModulus {
public:
    using InvalidModulus::InvalidModulus;
};
class WrongResidueClass : public InvalidModulus {
public:
    using InvalidModulus::InvalidModulus;
};

class NotASquare : public Error {
public:
    using Error::Error;
};
class DivisionByZero : public Error {
public:
    using Error::Error;
};
class IndexOutOfRange : public Error {
public:
    using Error::Error;
};
class ZeroGenerator : public Error {
public:
    using Error::Error;
};
class LengthMismatch : public Error {
public:
    using Error::Error;
};
class BadEpsilon : public Error {
public:
    using Error::Error;
};
class NotReversible : public Error {
public:
    using Error::Error;
};
class NotStochastic : public Error {
public:
    using Error::Error;
};
class InvalidDistribution : public Error {
public:
    using Error::Error;
};
class MissingPath : public Error {
public:
    using Error::Error;
};
class InvalidPathEdge : public Error {
public:
    using Error::Error;
};
class EvenCycle : public Error {
public:
    using Error::Error;
};
class InvalidCycleEdge : public Error {
public:
    using Error::Error;
};
class ConstructionFailed : public Error {
public:
    using Error::Error;
};
class NoOddCycle : public Error {
public:
    using Error::Error;
};
class EmptyRange : public Error {
public:
    using Error::Error;
};

/// Raised by a size gate (exact mixing, exact K^4, full tensor) unless forced.
class GateExceeded : public Error {
public:
    using Error::Error;
};

/// The walk did not reach the requested distance within the step budget.
/// Carries the worst-case TV curve computed so far.
class NotMixed : public Error {
public:
    NotMixed(const std::string& what, std::vector<double> curve)
        : Error(what), curve_(std::move(curve)) {}

    const std::vector<double>& curve() const noexcept { return curve_; }

private:
    std::vector<double> curve_;
};

}  // namespace circlewalk
