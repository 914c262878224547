#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kacmod {

// Exact rational arithmetic on int64. All quantities in this library that
// feed congruence tests (T exponents, admissibility conditions, Freudenthal
// sums) stay well inside 64 bits; normalize() keeps operands reduced.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    Rational operator-() const { return Rational(-num_, den_); }

    Rational& operator+=(const Rational& o) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator-=(const Rational& o) { return *this += -o; }
    Rational& operator*=(const Rational& o) {
        // cross-reduce first to keep intermediates small
        long long g1 = std::gcd(num_, o.den_);
        long long g2 = std::gcd(o.num_, den_);
        num_ = (num_ / g1) * (o.num_ / g2);
        den_ = (den_ / g2) * (o.den_ / g1);
        normalize();
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
        return *this *= Rational(o.den_, o.num_);
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }

    bool is_integer() const { return den_ == 1; }

    // Reduce into the half-open interval [0, m) for a positive integer m.
    // Used for congruences mod 2 (T exponents) and mod 1 (eq-style checks).
    Rational mod(long long m) const {
        long long md = m * den_;
        long long r = num_ % md;
        if (r < 0) r += md;
        return Rational(r, den_);
    }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    long long num_;
    long long den_;
};

} // namespace kacmod
