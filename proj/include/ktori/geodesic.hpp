#ifndef KTORI_GEODESIC_HPP
#define KTORI_GEODESIC_HPP

#include <functional>
#include <string>

#include "ktori/conformal_factor.hpp"
#include "ktori/parallel.hpp"
#include "ktori/sym_tensor.hpp"

namespace kt {

struct IntegratorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Phase-space state on T*T^n in g~-momenta; coordinates are kept in [0, 2pi).
struct GeodesicState {
    std::vector<double> x;
    std::vector<double> mom;
    double t = 0.0;
};

// Co-geodesic Hamiltonian H = (1/2) e^{-2f(x_n)} |mom|^2.
double hamiltonian(const GeodesicState& s, const ConformalFactor& F);

// One implicit-midpoint step; the fixed-point solve runs to 1e-13 or 50
// iterations and signals a too-large step by throwing IntegratorError.
// Momenta conjugate to coordinates absent from H are conserved exactly.
GeodesicState step_midpoint(const GeodesicState& s, double h, const ConformalFactor& F);

struct DriftReport {
    std::string name;
    double initial = 0.0;
    double max_abs_dev = 0.0;
    double relative = 0.0;  // max_abs_dev / max(1, |initial|)
    double h = 0.0;
    double horizon = 0.0;
    double energy_drift = 0.0;  // same relative measure for H
};

// Integrate to the horizon and sample F_K(t) = N_K(x(t), mom(t)) every step.
// An optional sink receives (t, x, mom, F_K, H) rows for CSV dumps.
DriftReport drift_report(const SymTensorField<double>& K, const std::string& name,
                         const GeodesicState& s0, const ConformalFactor& F, double h, double T,
                         std::function<void(double, const GeodesicState&, double, double)> sink = {});

// Deterministic batch of initial states (fixed seed protocol): x uniform in
// [0, 2pi)^n, momenta uniform in [-1, 1]^n.
std::vector<GeodesicState> seeded_states(int n, int count, unsigned seed);

std::vector<DriftReport> drift_batch(const SymTensorField<double>& K, const std::string& name,
                                     const std::vector<GeodesicState>& states,
                                     const ConformalFactor& F, double h, double T,
                                     Exec exec = Exec::parallel);

}  // namespace kt

#endif
