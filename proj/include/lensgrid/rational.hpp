#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace lensgrid {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational, always reduced with positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long long v) : v_(v) {}  // NOLINT: implicit from integers is intended
    Rational(const BigInt& v) : v_(v) {}  // NOLINT
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v_ = boost::multiprecision::cpp_rational(num, den);
    }

    BigInt num() const { return boost::multiprecision::numerator(v_); }
    BigInt den() const { return boost::multiprecision::denominator(v_); }
    bool is_integer() const { return den() == 1; }

    // floor(num/den)
    BigInt floor() const {
        BigInt n = num(), d = den();
        BigInt q = n / d;
        if (n % d != 0 && n < 0) q -= 1;
        return q;
    }

    Rational operator-() const { return Rational(-v_); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.v_ == 0) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    // "num/den", denominator always printed.
    std::string str() const { return num().str() + "/" + den().str(); }

    // Fixed-point rendering, truncated toward zero after `digits` places.
    std::string decimal(int digits = 6) const {
        BigInt n = num(), d = den();
        bool neg = n < 0;
        if (neg) n = -n;
        BigInt ip = n / d, rem = n % d;
        std::string s = (neg && (ip != 0 || rem != 0) ? "-" : "") + ip.str();
        if (digits > 0) {
            s += '.';
            for (int i = 0; i < digits; ++i) {
                rem *= 10;
                s += static_cast<char>('0' + static_cast<int>(rem / d));
                rem %= d;
            }
        }
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    explicit Rational(boost::multiprecision::cpp_rational v) : v_(std::move(v)) {}
    boost::multiprecision::cpp_rational v_;
};

inline long long to_ll(const BigInt& v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw std::overflow_error("integer does not fit in 64 bits");
    return static_cast<long long>(v);
}

}  // namespace lensgrid
