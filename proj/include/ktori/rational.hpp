#ifndef KTORI_RATIONAL_HPP
#define KTORI_RATIONAL_HPP

#include <stdexcept>
#include <string>

#include "ktori/bigint.hpp"

namespace kt {

// Exact rational with positive reduced denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(long long n, long long d) : Rational(BigInt(n), BigInt(d)) {}
    Rational(BigInt n, BigInt d);

    // Accepts "p", "-p/q" and exact decimals like "2.5".
    static Rational from_string(const std::string& s);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_.is_one(); }
    int sign() const { return num_.sign(); }

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    static int cmp(const Rational& a, const Rational& b);
    bool operator==(const Rational& o) const { return cmp(*this, o) == 0; }
    bool operator!=(const Rational& o) const { return cmp(*this, o) != 0; }
    bool operator<(const Rational& o) const { return cmp(*this, o) < 0; }
    bool operator>(const Rational& o) const { return cmp(*this, o) > 0; }
    bool operator<=(const Rational& o) const { return cmp(*this, o) <= 0; }
    bool operator>=(const Rational& o) const { return cmp(*this, o) >= 0; }

    Rational abs() const { return num_.sign() < 0 ? -*this : *this; }
    double to_double() const { return num_.to_double() / den_.to_double(); }
    std::string to_string() const;

private:
    BigInt num_, den_;
    void reduce();
};

}  // namespace kt

#endif
