#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace groupcoh {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// b^e for a nonnegative integer exponent.
inline BigInt big_pow(const BigInt& b, long long e) {
    BigInt r = 1;
    BigInt base = b;
    long long k = e;
    while (k > 0) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

/// Exact integer square root; returns false when n is not a perfect square.
inline bool big_sqrt_exact(const BigInt& n, BigInt& root) {
    if (n < 0) return false;
    root = boost::multiprecision::sqrt(n);
    return root * root == n;
}

} // namespace groupcoh
