#ifndef KTORI_ODE_LEMMA_HPP
#define KTORI_ODE_LEMMA_HPP

#include <cassert>
#include <functional>
#include <vector>

#include "ktori/scalar_ops.hpp"

namespace kt {

// Coefficients of the j-th scalar equation obtained by pairing the graded
// Killing system with xi^{p-2j+1}:
//   lhs_alpha_prime a_j' + lhs_f_alpha f' a_j
//     = rhs_alpha_prime a_{j-1}' + rhs_f_alpha f' a_{j-1}.
// For j = 0 the right-hand side multiplies a_{-1} = 0 and is reported as zero.
struct EqjCoefficients {
    Rational lhs_alpha_prime, lhs_f_alpha, rhs_alpha_prime, rhs_f_alpha;
    int n = 0, p = 0, j = 0;
};

EqjCoefficients eqj_coefficients(int n, int p, int j);

// d_j = (p-1)!/(p-2j-1)!, the pairing weight of L^j K_j against
// xi^{p-1}.xi_n.
long long dj_factor(int p, int j);

// Polynomial P with phi^j a_j = P(phi), phi = e^{2f}; a_j is then a
// polynomial of degree <= j in e^{-2f}.
template <class S>
struct PolyInPhi {
    std::vector<S> coeffs;  // coeffs[i] multiplies phi^i, trailing zeros pruned

    static PolyInPhi constant(S v) {
        PolyInPhi p;
        p.coeffs.push_back(std::move(v));
        p.prune();
        return p;
    }

    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    void prune() {
        while (!coeffs.empty() && scalar_ops<S>::is_zero(coeffs.back())) coeffs.pop_back();
    }

    S coeff(int i) const {
        return i >= 0 && i < static_cast<int>(coeffs.size()) ? coeffs[i] : scalar_ops<S>::zero();
    }

    double eval(double phi) const {
        double v = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 0;) v = v * phi + scalar_ops<S>::to_double(coeffs[i]);
        return v;
    }
};

// One induction step of the polynomial recursion: from P with
// phi^{j-1} a_{j-1} = P(phi), the multiplied equation integrates to
//   P_j(phi) = (b_j/2) int Q + (c_j/2) int P + C,   Q = 2 phi P' - 2(j-1) P,
// with the integration constant C an explicit free parameter.
template <class S>
PolyInPhi<S> recursion_step(const PolyInPhi<S>& prev, const S& b, const S& c, int j, const S& C) {
    PolyInPhi<S> out;
    if (prev.is_zero()) {
        out = PolyInPhi<S>::constant(C);
        return out;
    }
    assert(prev.degree() <= j - 1);
    PolyInPhi<S> q;
    q.coeffs.assign(prev.coeffs.size(), scalar_ops<S>::zero());
    for (int i = 0; i <= prev.degree(); ++i)
        q.coeffs[i] = scalar_ops<S>::from_int(2 * i - 2 * (j - 1)) * prev.coeff(i);
    q.prune();

    out.coeffs.assign(j + 1, scalar_ops<S>::zero());
    S half_b = scalar_ops<S>::div_int(b, 2);
    S half_c = scalar_ops<S>::div_int(c, 2);
    for (int i = 0; i <= q.degree(); ++i)
        out.coeffs[i + 1] = out.coeffs[i + 1] + scalar_ops<S>::div_int(half_b * q.coeff(i), i + 1);
    for (int i = 0; i <= prev.degree(); ++i)
        out.coeffs[i + 1] = out.coeffs[i + 1] + scalar_ops<S>::div_int(half_c * prev.coeff(i), i + 1);
    out.coeffs[0] = out.coeffs[0] + C;
    out.prune();
    return out;
}

// Classical fixed-step RK4 integration of the triangular system
//   a_j' + 2j f' a_j = b_j a_{j-1}' + c_j f' a_{j-1},  a_0 constant,
// used as the independent oracle against the exact recursion.
struct OdeOracleResult {
    std::vector<double> x;
    std::vector<std::vector<double>> alpha;  // alpha[j][sample], j = 0..l
    bool instability = false;                // endpoint drift between refinements > 1e-3
};

OdeOracleResult numeric_ode_oracle(const std::vector<double>& b, const std::vector<double>& c,
                                   const std::function<double(double)>& fprime, double x0,
                                   double x1, double alpha0,
                                   const std::vector<double>& initial_tail, int steps);

}  // namespace kt

#endif
