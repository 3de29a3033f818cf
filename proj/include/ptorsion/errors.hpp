#pragma once

#include <stdexcept>
#include <string>

namespace ptorsion {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid input: out-of-domain argument, malformed expression, bad flag value.
class ArgumentError : public Error {
public:
    using Error::Error;
};

// A symbol could not be given a numeric value (e.g. LOG_T without a log t value).
class EvaluationError : public Error {
public:
    using Error::Error;
};

class PoleError : public Error {
public:
    using Error::Error;
};

class ParityError : public Error {
public:
    using Error::Error;
};

class SingularityError : public Error {
public:
    using Error::Error;
};

// Product of two transcendental symbols; the coefficient field is linear in them.
class NonlinearProductError : public Error {
public:
    using Error::Error;
};

// The series path of the S-current pairing is only valid for analytic profiles.
class LicensingError : public Error {
public:
    using Error::Error;
};

// Two evaluation paths that must agree did not, or an asserted cancellation failed.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

// Quadrature or summation did not reach the requested tolerance.
// The best estimate so far travels with the exception as decimal strings.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, std::string partial, std::string error_estimate)
        : Error(what), partial_(std::move(partial)), estimate_(std::move(error_estimate)) {}
    const std::string& partial() const { return partial_; }
    const std::string& error_estimate() const { return estimate_; }

private:
    std::string partial_;
    std::string estimate_;
};

}  // namespace ptorsion
