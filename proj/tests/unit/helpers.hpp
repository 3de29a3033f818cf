#pragma once

#include <string>

#include "ptorsion/numerics.hpp"

namespace testing {

inline ptorsion::BigReal big(const char* s) { return ptorsion::parse_big(s); }

inline ptorsion::BigReal diff(const ptorsion::BigReal& a, const ptorsion::BigReal& b) {
    return boost::multiprecision::abs(a - b);
}

inline bool close(const ptorsion::BigReal& a, const ptorsion::BigReal& b, const char* tol) {
    return diff(a, b) <= ptorsion::parse_big(tol);
}

// |a - b| <= 10^{-digits}
inline bool agree(const ptorsion::BigReal& a, const ptorsion::BigReal& b, long digits) {
    return diff(a, b) <= ptorsion::epsilon_digits(digits);
}

inline std::string show(const ptorsion::BigReal& x) { return ptorsion::to_decimal(x, 25); }

}  // namespace testing
