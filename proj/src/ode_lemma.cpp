#include "ktori/ode_lemma.hpp"

#include <cmath>
#include <stdexcept>

namespace kt {

EqjCoefficients eqj_coefficients(int n, int p, int j) {
    if (n < 2 || p < 1) throw std::invalid_argument("eqj_coefficients: requires n >= 2, p >= 1");
    if (j < 0 || 2 * j > p - 1)
        throw std::invalid_argument("eqj_coefficients: j out of the legal range 0..floor((p-1)/2)");
    // p - 2j >= 1 in the legal range, so the leading coefficient never
    // vanishes and no normalization guard is needed.
    assert(p - 2 * j >= 1);
    EqjCoefficients e;
    e.n = n;
    e.p = p;
    e.j = j;
    const long long num = static_cast<long long>(p - 2 * j + 1) * (p - 2 * j);
    const long long den_l = n + 2 * (p - 2 * j - 1);
    const long long den_r = n + 2 * (p - 2 * j + 1);
    e.lhs_alpha_prime = Rational(num, den_l);
    e.lhs_f_alpha = Rational(2ll * j * num, den_l);
    if (j == 0) {
        e.rhs_alpha_prime = Rational();
        e.rhs_f_alpha = Rational();
    } else {
        e.rhs_alpha_prime = Rational(1, den_r);
        e.rhs_f_alpha = Rational(n + 2ll * p - 2ll * j, den_r);
    }
    return e;
}

long long dj_factor(int p, int j) {
    if (j < 0 || 2 * j > p - 1) throw std::invalid_argument("dj_factor: j out of range");
    long long d = 1;
    for (int k = p - 2 * j; k <= p - 1; ++k) d *= k;
    return d;
}

OdeOracleResult numeric_ode_oracle(const std::vector<double>& b, const std::vector<double>& c,
                                   const std::function<double(double)>& fprime, double x0,
                                   double x1, double alpha0,
                                   const std::vector<double>& initial_tail, int steps) {
    if (steps < 1000) throw std::invalid_argument("numeric_ode_oracle: step count must be >= 1e3");
    const int l = static_cast<int>(b.size());
    if (c.size() != b.size()) throw std::invalid_argument("numeric_ode_oracle: b/c size mismatch");

    // State is (alpha_1..alpha_l); alpha_0 is the given constant. The
    // derivatives are triangular: alpha_j' = -2j f' alpha_j + b_j alpha_{j-1}'
    // + c_j f' alpha_{j-1}, resolvable bottom-up at each point.
    auto derivs = [&](double x, const std::vector<double>& a) {
        std::vector<double> d(l, 0.0);
        const double fp = fprime(x);
        double prev = alpha0, prev_d = 0.0;
        for (int j = 1; j <= l; ++j) {
            double aj = a[j - 1];
            double dj = -2.0 * j * fp * aj + b[j - 1] * prev_d + c[j - 1] * fp * prev;
            d[j - 1] = dj;
            prev = aj;
            prev_d = dj;
        }
        return d;
    };

    auto integrate = [&](int nsteps) {
        std::vector<std::vector<double>> samples(l + 1);
        std::vector<double> xs(nsteps + 1);
        std::vector<double> a(initial_tail);
        a.resize(l, 0.0);
        const double h = (x1 - x0) / nsteps;
        for (int j = 0; j <= l; ++j) samples[j].reserve(nsteps + 1);
        auto record = [&](double x, const std::vector<double>& st) {
            samples[0].push_back(alpha0);
            for (int j = 1; j <= l; ++j) samples[j].push_back(st[j - 1]);
            return x;
        };
        xs[0] = x0;
        record(x0, a);
        for (int i = 0; i < nsteps; ++i) {
            double x = x0 + i * h;
            auto k1 = derivs(x, a);
            std::vector<double> t(l);
            for (int j = 0; j < l; ++j) t[j] = a[j] + 0.5 * h * k1[j];
            auto k2 = derivs(x + 0.5 * h, t);
            for (int j = 0; j < l; ++j) t[j] = a[j] + 0.5 * h * k2[j];
            auto k3 = derivs(x + 0.5 * h, t);
            for (int j = 0; j < l; ++j) t[j] = a[j] + h * k3[j];
            auto k4 = derivs(x + h, t);
            for (int j = 0; j < l; ++j)
                a[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
            xs[i + 1] = x0 + (i + 1) * h;
            record(xs[i + 1], a);
        }
        return std::make_pair(std::move(xs), std::move(samples));
    };

    OdeOracleResult out;
    auto [xs, samples] = integrate(steps);
    out.x = std::move(xs);
    out.alpha = std::move(samples);

    // Refinement drift check on the endpoint; a non-finite endpoint counts as
    // unstable outright.
    auto [xs2, samples2] = integrate(2 * steps);
    double num = 0.0, den = 0.0;
    bool finite = true;
    for (int j = 0; j <= l; ++j) {
        double e1 = out.alpha[j].back(), e2 = samples2[j].back();
        finite = finite && std::isfinite(e1) && std::isfinite(e2);
        num += (e1 - e2) * (e1 - e2);
        den += e2 * e2;
    }
    out.instability = !finite || std::sqrt(num) > 1e-3 * std::max(1.0, std::sqrt(den));
    return out;
}

}  // namespace kt
