#include "ktori/geodesic.hpp"

#include <cmath>
#include <random>

namespace kt {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

double sq_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

// Hamiltonian vector field: xdot_i = e^{-2f} mom_i,
// momdot_n = -(1/2) (d/dx_n e^{-2f}) |mom|^2, transverse momenta frozen.
void rhs(const std::vector<double>& x, const std::vector<double>& mom, const ConformalFactor& F,
         std::vector<double>& xdot, std::vector<double>& momdot) {
    const int n = static_cast<int>(x.size());
    const double e = F.emin2f_at(x[n - 1]);
    for (int i = 0; i < n; ++i) xdot[i] = e * mom[i];
    for (int i = 0; i < n; ++i) momdot[i] = 0.0;
    momdot[n - 1] = -0.5 * F.emin2f_deriv_at(x[n - 1]) * sq_norm(mom);
}
}  // namespace

double hamiltonian(const GeodesicState& s, const ConformalFactor& F) {
    return 0.5 * F.emin2f_at(s.x[s.x.size() - 1]) * sq_norm(s.mom);
}

GeodesicState step_midpoint(const GeodesicState& s, double h, const ConformalFactor& F) {
    if (!(h > 0.0)) throw std::invalid_argument("step_midpoint: h must be positive");
    const int n = static_cast<int>(s.x.size());
    std::vector<double> mx = s.x, mm = s.mom;
    std::vector<double> xdot(n), momdot(n);
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
        rhs(mx, mm, F, xdot, momdot);
        double delta = 0.0;
        bool finite = true;
        for (int i = 0; i < n; ++i) {
            double nx = s.x[i] + 0.5 * h * xdot[i];
            double nm = s.mom[i] + 0.5 * h * momdot[i];
            finite = finite && std::isfinite(nx) && std::isfinite(nm);
            delta = std::max(delta, std::fabs(nx - mx[i]));
            delta = std::max(delta, std::fabs(nm - mm[i]));
            mx[i] = nx;
            mm[i] = nm;
        }
        if (!finite) break;
        if (delta < 1e-13) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw IntegratorError("step_midpoint: fixed-point iteration did not converge (reduce h)");
    GeodesicState next;
    next.x.resize(n);
    next.mom.resize(n);
    for (int i = 0; i < n; ++i) {
        next.x[i] = 2.0 * mx[i] - s.x[i];
        next.mom[i] = 2.0 * mm[i] - s.mom[i];
        next.x[i] -= kTwoPi * std::floor(next.x[i] / kTwoPi);
    }
    next.t = s.t + h;
    return next;
}

DriftReport drift_report(const SymTensorField<double>& K, const std::string& name,
                         const GeodesicState& s0, const ConformalFactor& F, double h, double T,
                         std::function<void(double, const GeodesicState&, double, double)> sink) {
    if (K.p < 1) throw std::invalid_argument("drift_report: tensor degree must be >= 1");
    DriftReport rep;
    rep.name = name;
    rep.h = h;
    rep.horizon = T;

    GeodesicState s = s0;
    for (double& xi : s.x) xi -= kTwoPi * std::floor(xi / kTwoPi);
    const double f0 = eval(K, s.x, s.mom);
    const double h0 = hamiltonian(s, F);
    rep.initial = f0;
    double max_dev = 0.0, max_energy_dev = 0.0;
    if (sink) sink(s.t, s, f0, h0);
    const long long steps = static_cast<long long>(std::llround(T / h));
    for (long long i = 0; i < steps; ++i) {
        s = step_midpoint(s, h, F);
        const double fk = eval(K, s.x, s.mom);
        const double en = hamiltonian(s, F);
        max_dev = std::max(max_dev, std::fabs(fk - f0));
        max_energy_dev = std::max(max_energy_dev, std::fabs(en - h0));
        if (sink) sink(s.t, s, fk, en);
    }
    rep.max_abs_dev = max_dev;
    rep.relative = max_dev / std::max(1.0, std::fabs(f0));
    rep.energy_drift = max_energy_dev / std::max(1.0, std::fabs(h0));
    return rep;
}

std::vector<GeodesicState> seeded_states(int n, int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ux(0.0, kTwoPi);
    std::uniform_real_distribution<double> um(-1.0, 1.0);
    std::vector<GeodesicState> states(count);
    for (auto& s : states) {
        s.x.resize(n);
        s.mom.resize(n);
        for (int i = 0; i < n; ++i) s.x[i] = ux(rng);
        for (int i = 0; i < n; ++i) s.mom[i] = um(rng);
    }
    return states;
}

std::vector<DriftReport> drift_batch(const SymTensorField<double>& K, const std::string& name,
                                     const std::vector<GeodesicState>& states,
                                     const ConformalFactor& F, double h, double T, Exec exec) {
    std::vector<DriftReport> reports(states.size());
    parallel_for(static_cast<int>(states.size()), exec, [&](int i) {
        reports[i] = drift_report(K, name + ":s" + std::to_string(i), states[i], F, h, T);
    });
    return reports;
}

}  // namespace kt
