#include "qm/rational.hpp"

#include "qm/errors.hpp"

#include <numeric>

namespace qm {

namespace {

Rational from_wide(__int128 num, __int128 den) {
    __int128 a = num < 0 ? -num : num;
    __int128 b = den;
    while (b != 0) {
        const __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    constexpr __int128 lim = INT64_MAX;
    if (num > lim || num < -lim || den > lim) throw std::overflow_error("rational overflow");
    return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den == 0) throw InvalidInput("rational with zero denominator");
    if (den < 0) {
        num_ = -num;
        den_ = -den;
    }
}

Rational Rational::reduced() const {
    const std::int64_t g = std::gcd(num_, den_);
    return g > 1 ? Rational(num_ / g, den_ / g) : *this;
}

std::string Rational::str() const {
    const Rational r = reduced();
    if (r.den_ == 1) return std::to_string(r.num_);
    return std::to_string(r.num_) + "/" + std::to_string(r.den_);
}

Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return Rational(a.num_ + b.num_, a.den_);
    return from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                     static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(-b.num_, b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

} // namespace qm
