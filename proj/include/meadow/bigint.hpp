#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace meadow {

using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const BigInt& v) { return v.str(); }

inline BigInt abs(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::gcd(abs(a), abs(b));
}

/// Representative of v modulo m in [0, m).
inline BigInt mod_floor(const BigInt& v, const BigInt& m) {
    BigInt r = v % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace meadow
