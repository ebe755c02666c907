// Serial vs OpenMP timings for the three hot kernels: operator assembly,
// one-sided Jacobi SVD and geodesic drift batches.

#include <chrono>
#include <cstdio>

#include "ktori/geodesic.hpp"
#include "ktori/kernel_solve.hpp"

using namespace kt;

namespace {

template <class F>
double time_ms(F&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

void row(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-34s %10.1f ms %10.1f ms %6.2fx\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

}  // namespace

int main() {
    std::printf("threads: %d\n", max_threads());
    std::printf("%-34s %13s %13s %7s\n", "kernel", "serial", "openmp", "speedup");

    auto inv = ConformalFactor::inverse_trig(Rational(2), Rational(1));
    auto expf = ConformalFactor::trig_exponent(Rational(1));

    {
        double ts = time_ms([&] {
            assemble_operator<Rational>(3, 3, inv, {1, 1, 4}, OperatorVariant::killing,
                                        Exec::serial);
        });
        double tp = time_ms([&] {
            assemble_operator<Rational>(3, 3, inv, {1, 1, 4}, OperatorVariant::killing,
                                        Exec::parallel);
        });
        row("assemble (3,3) inv-cos band 4", ts, tp);
    }
    {
        auto M = assemble_operator<double>(3, 2, expf, {1, 1, 6}, OperatorVariant::killing);
        double ts = time_ms([&] { nullspace_float(M, 1e-8, Exec::serial); });
        double tp = time_ms([&] { nullspace_float(M, 1e-8, Exec::parallel); });
        row("jacobi svd (3,2) exp-cos band 6", ts, tp);
    }
    {
        auto span = span_basis<double>(2, 2, inv);
        auto states = seeded_states(2, 8, 20260808u);
        double ts = time_ms([&] {
            drift_batch(span[1], "L", states, inv, 1e-3, 50.0, Exec::serial);
        });
        double tp = time_ms([&] {
            drift_batch(span[1], "L", states, inv, 1e-3, 50.0, Exec::parallel);
        });
        row("drift batch 8 states T=50", ts, tp);
    }
    return 0;
}
