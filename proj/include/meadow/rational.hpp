#pragma once

#include "meadow/bigint.hpp"

#include <compare>
#include <string>
#include <string_view>

namespace meadow {

/// Exact rational in lowest terms with a positive denominator.
/// Division is total: x / 0 == 0.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design of numerals
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}  // NOLINT
    Rational(BigInt num, BigInt den);

    const BigInt& num() const noexcept { return num_; }
    const BigInt& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_ == 0; }
    int sign() const noexcept { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

    Rational operator-() const { return Rational(-num_, den_, Normalized{}); }
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b);
    /// Zero-totalized: a / 0 == 0.
    friend Rational operator/(const Rational& a, const Rational& b);

    /// 1 / this, with 1 / 0 == 0.
    Rational reciprocal() const;

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    /// "n" for integers, "n/d" otherwise.
    std::string str() const;
    /// Accepts "n", "-n", "n/d" with d != 0 (the result is normalized).
    static Rational parse(std::string_view text);

private:
    struct Normalized {};
    Rational(BigInt num, BigInt den, Normalized) : num_(std::move(num)), den_(std::move(den)) {}

    BigInt num_;
    BigInt den_;
};

}  // namespace meadow
