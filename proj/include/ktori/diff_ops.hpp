#ifndef KTORI_DIFF_OPS_HPP
#define KTORI_DIFF_OPS_HPP

#include "ktori/conformal_factor.hpp"
#include "ktori/sym_tensor.hpp"

namespace kt {

// d K = sum_i e_i . d/dx_i K; a derivation over sym_mul, commutes with L.
template <class S>
SymTensorField<S> d_flat(const SymTensorField<S>& K) {
    SymTensorField<S> R(K.n, K.p + 1);
    for (const auto& [a, c] : K.coeffs) {
        for (int i = 0; i < K.n; ++i) {
            auto dc = ts_partial(c, i);
            if (dc.is_zero()) continue;
            MultiIndex b = a;
            b.exps[i] += 1;
            R.add_coeff(b, dc);
        }
    }
    R.prune();
    return R;
}

// delta K = -sum_i e_i -| d/dx_i K, the formal adjoint of d.
template <class S>
SymTensorField<S> delta_flat(const SymTensorField<S>& K) {
    SymTensorField<S> R(K.n, K.p >= 1 ? K.p - 1 : 0);
    if (K.p == 0) return R;
    for (const auto& [a, c] : K.coeffs) {
        for (int i = 0; i < K.n; ++i) {
            if (a[i] == 0) continue;
            auto dc = ts_partial(c, i);
            if (dc.is_zero()) continue;
            MultiIndex b = a;
            b.exps[i] -= 1;
            R.add_coeff(b, scalar_ops<S>::from_int(-a[i]) * dc);
        }
    }
    R.prune();
    return R;
}

// Lie derivative along the parallel frame field xi_axis, axis in [0, n-2]:
// coefficient-wise d/dx_axis.
template <class S>
SymTensorField<S> lie_flat_dir(const SymTensorField<S>& K, int axis) {
    if (axis < 0 || axis >= K.n - 1)
        throw std::invalid_argument("lie_flat_dir: axis out of range (transverse axes only)");
    SymTensorField<S> R(K.n, K.p);
    for (const auto& [a, c] : K.coeffs) {
        auto dc = ts_partial(c, axis);
        if (!dc.is_zero()) R.coeffs[a] = std::move(dc);
    }
    return R;
}

// Residual of the flat-frame Killing equation dK + L (df -| K) = 0 for the
// metric e^{2f} g. For the inverse_trig family f' is not band-limited, so the
// equivalent phi-multiplied form 2 phi dK - phi' L (xi_n -| K) is used
// (phi > 0 pointwise keeps the kernel identical).
template <class S>
SymTensorField<S> killing_residual(const SymTensorField<S>& K, const ConformalFactor& F) {
    if (F.is_flat()) return d_flat(K);
    const int axis_n = K.n - 1;
    if (F.direct_form()) {
        auto fp = F.fprime<S>(K.n);
        return d_flat(K) + l_mul(scalar_field_mul(fp, contract_axis(axis_n, K)));
    }
    auto phi = F.phi<S>(K.n);
    auto phip = F.phi_prime<S>(K.n);
    SymTensorField<S> R = scalar_field_mul(scalar_ops<S>::from_int(2) * phi, d_flat(K));
    return R - l_mul(scalar_field_mul(phip, contract_axis(axis_n, K)));
}

// Standard-decomposition parts of the Killing residual; part j is the j-th
// trace-free graded equation. Only factors with band-limited f' qualify.
template <class S>
std::vector<SymTensorField<S>> graded_killing_residual(const SymTensorField<S>& K,
                                                       const ConformalFactor& F) {
    if (!F.direct_form())
        throw unsupported_operation(
            "graded_killing_residual: unsupported factor (use killing_residual for inverse_trig)");
    return standard_decompose(killing_residual(K, F)).parts;
}

// The j-th graded equation evaluated directly from the decomposition parts of
// K (lhs - rhs of the displayed system):
//   dK_j + L dlt K_j/(n+2(p-2j-1)) + 2j (df.K_j - L (df -| K_j)/(n+2(p-2j-1)))
//   - dlt K_{j-1}/(n+2(p-2j+1)) + (1 + 2(j-1)/(n+2(p-2j+1))) df -| K_{j-1}.
// Terms whose tensor argument is a scalar are dropped before their
// coefficients are formed, which keeps the n = 2 innermost grade total.
template <class S>
SymTensorField<S> graded_equation_row(const std::vector<SymTensorField<S>>& parts, int j,
                                      int n, int p, const ConformalFactor& F) {
    auto fp = F.fprime<S>(n);
    SymTensorField<S> row(n, p + 1 - 2 * j);
    auto vector_df_mul = [&](const SymTensorField<S>& T) {
        return scalar_field_mul(fp, sym_mul(SymTensorField<S>::basis_vector(n, n - 1), T));
    };
    auto df_contract = [&](const SymTensorField<S>& T) {
        return scalar_field_mul(fp, contract_axis(n - 1, T));
    };
    if (j < static_cast<int>(parts.size()) && p - 2 * j >= 0) {
        const auto& Kj = parts[j];
        const int q = p - 2 * j;
        row = row + d_flat(Kj);
        if (q >= 1) {
            S c = scalar_ops<S>::div_int(scalar_ops<S>::one(), n + 2 * (q - 1));
            row = row + c * l_mul(delta_flat(Kj));
        }
        if (j >= 1) {
            row = row + scalar_ops<S>::from_int(2 * j) * vector_df_mul(Kj);
            if (q >= 1) {
                S c = scalar_ops<S>::div_int(scalar_ops<S>::from_int(2 * j), n + 2 * (q - 1));
                row = row - c * l_mul(df_contract(Kj));
            }
        }
    }
    if (j >= 1 && j - 1 < static_cast<int>(parts.size())) {
        const auto& Kprev = parts[j - 1];
        long long denom = n + 2 * (p - 2 * j + 1);
        S inv = scalar_ops<S>::div_int(scalar_ops<S>::one(), denom);
        row = row - inv * delta_flat(Kprev);
        S c = scalar_ops<S>::one() + scalar_ops<S>::div_int(scalar_ops<S>::from_int(2 * (j - 1)), denom);
        row = row + c * df_contract(Kprev);
    }
    return row;
}

// Residual of the flat trace-free conformal Killing equation
//   (dK)_0 = dK + (1/(n+2(p-1))) L delta K.
// A scalar has delta K = 0, so p = 0 reduces to dK and no degenerate
// denominator is formed.
template <class S>
SymTensorField<S> conformal_killing_residual(const SymTensorField<S>& K,
                                             bool check_trace_free = true) {
    if (check_trace_free && !lambda_op(K).is_zero())
        throw std::invalid_argument("conformal_killing_residual: input not trace-free");
    if (K.p == 0) return d_flat(K);
    S coeff = scalar_ops<S>::div_int(scalar_ops<S>::one(), K.n + 2 * (K.p - 1));
    return d_flat(K) + coeff * l_mul(delta_flat(K));
}

}  // namespace kt

#endif
