#include "meadow/rational.hpp"

#include "meadow/errors.hpp"

#include <cctype>

namespace meadow {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw std::invalid_argument("Rational with zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    const BigInt g = gcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
    if (num_ == 0) den_ = 1;
}

Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return Rational(a.num_ + b.num_, a.den_);
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    if (a.is_zero() || b.is_zero()) return Rational();
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational Rational::reciprocal() const {
    if (is_zero()) return Rational();
    if (num_ < 0) return Rational(-den_, -num_, Normalized{});
    return Rational(den_, num_, Normalized{});
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.reciprocal(); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const BigInt l = a.num_ * b.den_;
    const BigInt r = b.num_ * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
}

Rational Rational::parse(std::string_view text) {
    auto digits = [](std::string_view s, bool allow_sign) {
        if (s.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && s[0] == '-') i = 1;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    const auto slash = text.find('/');
    const std::string_view n = text.substr(0, slash);
    if (!digits(n, true)) throw BadSpecifier("malformed rational '" + std::string(text) + "'");
    if (slash == std::string_view::npos) return Rational(BigInt(std::string(n)));
    const std::string_view d = text.substr(slash + 1);
    if (!digits(d, true) || BigInt(std::string(d)) == 0)
        throw BadSpecifier("malformed rational '" + std::string(text) + "'");
    return Rational(BigInt(std::string(n)), BigInt(std::string(d)));
}

}  // namespace meadow
