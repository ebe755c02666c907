#ifndef KTORI_SCALAR_OPS_HPP
#define KTORI_SCALAR_OPS_HPP

#include <cmath>
#include <string>

#include "ktori/rational.hpp"

namespace kt {

// Coefficient arithmetic is generic over one of two modes: exact rationals for
// the theorem-grade runs and doubles for the scaling / cross-check path.
template <class S>
struct scalar_ops;

template <>
struct scalar_ops<Rational> {
    static constexpr bool exact = true;
    static Rational zero() { return Rational(); }
    static Rational one() { return Rational(1); }
    static Rational from_int(long long v) { return Rational(v); }
    static Rational from_rational(const Rational& r) { return r; }
    static Rational div_int(const Rational& v, long long d) { return v / Rational(d); }
    static bool is_zero(const Rational& v) { return v.is_zero(); }
    static double to_double(const Rational& v) { return v.to_double(); }
    static double abs_double(const Rational& v) { return std::fabs(v.to_double()); }
    static std::string to_string(const Rational& v) { return v.to_string(); }
};

template <>
struct scalar_ops<double> {
    static constexpr bool exact = false;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double from_int(long long v) { return static_cast<double>(v); }
    static double from_rational(const Rational& r) { return r.to_double(); }
    static double div_int(double v, long long d) { return v / static_cast<double>(d); }
    static bool is_zero(double v) { return v == 0.0; }
    static double to_double(double v) { return v; }
    static double abs_double(double v) { return std::fabs(v); }
    static std::string to_string(double v);
};

inline std::string scalar_ops<double>::to_string(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

enum class ArithMode { exact, floating };

inline std::string to_string(ArithMode m) { return m == ArithMode::exact ? "exact" : "float"; }

}  // namespace kt

#endif
