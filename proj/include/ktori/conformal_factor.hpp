#ifndef KTORI_CONFORMAL_FACTOR_HPP
#define KTORI_CONFORMAL_FACTOR_HPP

#include <cmath>
#include <optional>
#include <string>

#include "ktori/torus_scalar.hpp"

namespace kt {

// The metric family g~ = e^{2f} g with f depending on the last coordinate.
//   flat           e^{2f} = 1
//   inverse_trig   e^{2f} = 1/phi,  phi = c + a cos x_n,  c > |a| > 0
//   trig_exponent  f = A cos x_n,   A != 0
// The inverse_trig family keeps e^{-2jf} = phi^j band-limited, which is what
// makes the discrete kernel computation exact for every predicted solution.
struct ConformalFactor {
    enum class Kind { flat, inverse_trig, trig_exponent };

    Kind kind = Kind::flat;
    Rational c, a;   // inverse_trig parameters
    Rational amp;    // trig_exponent amplitude A

    static ConformalFactor flat() { return ConformalFactor{}; }
    static ConformalFactor inverse_trig(Rational c_, Rational a_);
    static ConformalFactor trig_exponent(Rational amp_);

    // Mini-grammar: "flat" | "inv-cos:<c>,<a>" | "exp-cos:<A>", numbers as
    // "p/q" or exact decimals.
    static ConformalFactor parse(const std::string& spec);
    std::string spec_string() const;

    bool is_flat() const { return kind == Kind::flat; }
    // Axis-n frequency band of the operator coefficients.
    int op_band() const { return kind == Kind::flat ? 0 : 1; }
    // Whether the Killing operator can use d K + L (f' xi_n-| K) directly.
    bool direct_form() const { return kind != Kind::inverse_trig; }

    template <class S>
    TorusScalar<S> fprime(int n) const {
        if (kind == Kind::flat) return TorusScalar<S>::zero(n);
        if (kind == Kind::trig_exponent) {
            std::vector<int> en(n, 0);
            en[n - 1] = 1;
            return TorusScalar<S>::mode(n, en, scalar_ops<S>::zero(),
                                        -scalar_ops<S>::from_rational(amp));
        }
        throw unsupported_operation(
            "inverse_trig: f' is not band-limited; use the phi-multiplied operator");
    }

    template <class S>
    TorusScalar<S> phi(int n) const {
        if (kind != Kind::inverse_trig)
            throw std::invalid_argument("phi is defined for the inverse_trig factor only");
        std::vector<int> en(n, 0);
        en[n - 1] = 1;
        TorusScalar<S> u = TorusScalar<S>::constant(n, scalar_ops<S>::from_rational(c));
        return u + TorusScalar<S>::mode(n, en, scalar_ops<S>::from_rational(a),
                                        scalar_ops<S>::zero());
    }

    template <class S>
    TorusScalar<S> phi_prime(int n) const {
        return ts_partial(phi<S>(n), n - 1);
    }

    // Band-limited series of e^{-2jf} where it exists.
    template <class S>
    std::optional<TorusScalar<S>> emin2f_power(int n, int j) const {
        if (kind == Kind::flat) return TorusScalar<S>::constant(n, scalar_ops<S>::one());
        if (kind == Kind::trig_exponent) return std::nullopt;
        TorusScalar<S> r = TorusScalar<S>::constant(n, scalar_ops<S>::one());
        TorusScalar<S> p = phi<S>(n);
        for (int i = 0; i < j; ++i) r = ts_mul(r, p);
        return r;
    }

    double emin2f_at(double xn) const {
        switch (kind) {
            case Kind::flat: return 1.0;
            case Kind::inverse_trig: return c.to_double() + a.to_double() * std::cos(xn);
            case Kind::trig_exponent: return std::exp(-2.0 * amp.to_double() * std::cos(xn));
        }
        return 1.0;
    }

    // d/dx_n of e^{-2f}.
    double emin2f_deriv_at(double xn) const {
        switch (kind) {
            case Kind::flat: return 0.0;
            case Kind::inverse_trig: return -a.to_double() * std::sin(xn);
            case Kind::trig_exponent:
                return 2.0 * amp.to_double() * std::sin(xn) *
                       std::exp(-2.0 * amp.to_double() * std::cos(xn));
        }
        return 0.0;
    }
};

// Aggregated per-factor data for operator assembly.
template <class S>
struct FactorData {
    TorusScalar<S> fprime;                   // zero when not band-limited
    bool fprime_band_limited = true;
    std::optional<TorusScalar<S>> phi;       // inverse_trig only
    std::optional<TorusScalar<S>> phi_prime;
    bool multiplied_form_required = false;   // assembly must use 2 phi dK - phi' L (xi_n -| K)
};

template <class S>
FactorData<S> factor_data(const ConformalFactor& F, int n) {
    FactorData<S> d;
    if (F.kind == ConformalFactor::Kind::inverse_trig) {
        d.fprime = TorusScalar<S>::zero(n);
        d.fprime_band_limited = false;
        d.phi = F.phi<S>(n);
        d.phi_prime = F.phi_prime<S>(n);
        d.multiplied_form_required = true;
    } else {
        d.fprime = F.fprime<S>(n);
    }
    return d;
}

}  // namespace kt

#endif
