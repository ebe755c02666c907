#ifndef KTORI_KERNEL_SOLVE_HPP
#define KTORI_KERNEL_SOLVE_HPP

#include <chrono>

#include "ktori/nullspace.hpp"

namespace kt {

template <class S>
struct KernelBasis {
    int n = 0, p = 0;
    ConformalFactor factor;
    std::vector<int> band;
    OperatorVariant variant = OperatorVariant::killing;
    ArithMode mode = ArithMode::exact;
    std::vector<SymTensorField<S>> basis;
    int dimension = 0;
    double residual_max = 0.0;             // re-verification residual, 0 in exact mode
    std::vector<double> singular_values;   // float mode, descending
    std::vector<std::string> warnings;
};

struct KernelOptions {
    double svd_tol = 1e-8;
    Exec exec = Exec::parallel;
};

// Assemble the operator, compute its nullspace and re-verify every basis
// member against the operator. Exact members must have identically zero
// residual; float members must sit below 1e-10 relative.
template <class S>
KernelBasis<S> compute_kernel(int n, int p, const ConformalFactor& F,
                              const std::vector<int>& band_spec, OperatorVariant variant,
                              const KernelOptions& opt = {}) {
    KernelBasis<S> out;
    out.n = n;
    out.p = p;
    out.factor = F;
    out.band = broadcast_band(n, band_spec);
    out.variant = variant;
    out.mode = scalar_ops<S>::exact ? ArithMode::exact : ArithMode::floating;

    SparseLinearMap<S> M = assemble_operator<S>(n, p, F, out.band, variant, opt.exec, &out.warnings);
    NullspaceResult<S> ns;
    if constexpr (scalar_ops<S>::exact) {
        ns = nullspace_exact(M);
    } else {
        ns = nullspace_float(M, opt.svd_tol, opt.exec);
    }
    for (auto& w : ns.warnings) out.warnings.push_back(std::move(w));

    double sigma_max = ns.singular_values.empty() ? 0.0 : ns.singular_values[0];
    for (const auto& vec : ns.basis) {
        auto res = M.apply(vec);
        double rmax = 0.0;
        for (const auto& v : res) rmax = std::max(rmax, scalar_ops<S>::abs_double(v));
        if constexpr (scalar_ops<S>::exact) {
            for (const auto& v : res)
                if (!scalar_ops<S>::is_zero(v))
                    throw std::logic_error("compute_kernel: exact kernel re-verification failed");
            rmax = 0.0;
        } else {
            double rel = sigma_max > 0.0 ? rmax / sigma_max : rmax;
            if (rel > 1e-10)
                out.warnings.push_back("kernel member residual above 1e-10 relative");
            rmax = rel;
        }
        out.residual_max = std::max(out.residual_max, rmax);
        out.basis.push_back(vec_to_field(vec, M.cols));
    }
    out.dimension = static_cast<int>(out.basis.size());
    out.singular_values = std::move(ns.singular_values);

    // Linear independence of the basis, verified by rank.
    if (out.dimension > 0) {
        int rank;
        if constexpr (scalar_ops<S>::exact) {
            rank = rank_exact(ns.basis);
        } else {
            rank = rank_float(ns.basis);
        }
        if (rank != out.dimension)
            throw std::logic_error("compute_kernel: kernel basis is not independent");
    }
    return out;
}

// Count of the predicted kernel dimension:
//   inverse_trig  sum_{m<=p/2} C(p-2m+n-2, n-2)   (monomials xi^a L~^m)
//   trig_exponent C(p+n-2, n-2)                   (band-limited members only)
//   flat          C(p+n-1, n-1)                   (constant-coefficient tensors)
inline long long predicted_dimension(int n, int p, const ConformalFactor& F) {
    if (n < 2 || p < 0) throw std::invalid_argument("predicted_dimension: requires n >= 2, p >= 0");
    switch (F.kind) {
        case ConformalFactor::Kind::flat:
            return binomial(p + n - 1, n - 1);
        case ConformalFactor::Kind::trig_exponent:
            return binomial(p + n - 2, n - 2);
        case ConformalFactor::Kind::inverse_trig: {
            long long total = 0;
            for (int m = 0; 2 * m <= p; ++m) total += binomial(p - 2 * m + n - 2, n - 2);
            return total;
        }
    }
    return 0;
}

// The monomial family xi^a L~^m of the predicted span, deterministic order:
// m ascending, transverse multi-index lex. For trig_exponent only the m = 0
// members are band-limited; for flat all constant monomials of degree p.
template <class S>
std::vector<SymTensorField<S>> span_basis(int n, int p, const ConformalFactor& F) {
    std::vector<SymTensorField<S>> out;
    auto transverse_monomial = [&](const MultiIndex& t) {
        std::vector<int> e = t.exps;
        e.push_back(0);
        return SymTensorField<S>::monomial(MultiIndex(std::move(e)),
                                           TorusScalar<S>::constant(n, scalar_ops<S>::one()));
    };
    switch (F.kind) {
        case ConformalFactor::Kind::flat:
            for (const auto& a : multi_indices(n, p))
                out.push_back(SymTensorField<S>::monomial(
                    a, TorusScalar<S>::constant(n, scalar_ops<S>::one())));
            break;
        case ConformalFactor::Kind::trig_exponent:
            for (const auto& t : multi_indices(n - 1, p)) out.push_back(transverse_monomial(t));
            break;
        case ConformalFactor::Kind::inverse_trig: {
            SymTensorField<S> phiL = scalar_field_mul(
                F.phi<S>(n), l_mul(SymTensorField<S>::scalar(
                                 n, TorusScalar<S>::constant(n, scalar_ops<S>::one()))));
            SymTensorField<S> power = SymTensorField<S>::scalar(
                n, TorusScalar<S>::constant(n, scalar_ops<S>::one()));
            for (int m = 0; 2 * m <= p; ++m) {
                for (const auto& t : multi_indices(n - 1, p - 2 * m))
                    out.push_back(sym_mul(transverse_monomial(t), power));
                if (2 * (m + 1) <= p) power = sym_mul(power, phiL);
            }
            break;
        }
    }
    return out;
}

struct SubspaceCompare {
    bool contained = false;  // span(B) subset of span(A)
    bool equal = false;
};

// Rank tests on stacked coefficient vectors; fields are embedded into the
// common elementwise-max band first.
template <class S>
SubspaceCompare subspace_compare(const std::vector<SymTensorField<S>>& A,
                                 const std::vector<SymTensorField<S>>& B) {
    SubspaceCompare out;
    if (A.empty() && B.empty()) {
        out.contained = out.equal = true;
        return out;
    }
    int n = !A.empty() ? A[0].n : B[0].n;
    int p = !A.empty() ? A[0].p : B[0].p;
    for (const auto& K : A)
        if (K.n != n || K.p != p) throw std::invalid_argument("subspace_compare: shape mismatch");
    for (const auto& K : B)
        if (K.n != n || K.p != p) throw std::invalid_argument("subspace_compare: shape mismatch");
    std::vector<int> band(n, 0);
    auto widen = [&](const SymTensorField<S>& K) {
        auto kb = K.coeff_band();
        for (int i = 0; i < n; ++i) band[i] = std::max(band[i], kb[i]);
    };
    for (const auto& K : A) widen(K);
    for (const auto& K : B) widen(K);
    FieldLayout layout(n, p, band);

    std::vector<std::vector<S>> rows_a, rows_ab, rows_b;
    for (const auto& K : A) rows_a.push_back(field_to_vec(K, layout));
    rows_ab = rows_a;
    for (const auto& K : B) {
        rows_b.push_back(field_to_vec(K, layout));
        rows_ab.push_back(rows_b.back());
    }
    int rank_a, rank_ab, rank_b;
    if constexpr (scalar_ops<S>::exact) {
        rank_a = rank_exact(rows_a);
        rank_ab = rank_exact(rows_ab);
        rank_b = rank_exact(rows_b);
    } else {
        rank_a = rank_float(rows_a);
        rank_ab = rank_float(rows_ab);
        rank_b = rank_float(rows_b);
    }
    out.contained = rank_ab == rank_a;
    out.equal = out.contained && rank_b == rank_a;
    return out;
}

struct ParityFlatness {
    bool parity_ok = false;
    bool flatness_ok = false;
};

// parity: no multi-index with odd exponent on axis n carries a coefficient;
// flatness: coefficients are constant along the transverse axes (frequency
// support on axis n only). Float mode ignores entries below 1e-10 relative.
template <class S>
ParityFlatness parity_and_flatness(const SymTensorField<S>& K) {
    ParityFlatness out{true, true};
    const double floor = scalar_ops<S>::exact ? 0.0 : 1e-10 * K.max_abs();
    auto significant = [&](const S& v) {
        return !scalar_ops<S>::is_zero(v) && scalar_ops<S>::abs_double(v) > floor;
    };
    for (const auto& [a, c] : K.coeffs) {
        bool has_coeff = false;
        for (const auto& [k, cs] : c.terms) {
            bool sig = significant(cs.first) || significant(cs.second);
            if (!sig) continue;
            has_coeff = true;
            for (int i = 0; i + 1 < K.n; ++i)
                if (k[i] != 0) out.flatness_ok = false;
        }
        if (has_coeff && a[K.n - 1] % 2 != 0) out.parity_ok = false;
    }
    return out;
}

struct VerificationReport {
    int n = 0, p = 0;
    ConformalFactor factor;
    std::vector<int> band;
    ArithMode mode = ArithMode::exact;
    int kernel_dim = 0;
    long long predicted_dim = 0;
    bool span_contained = false;
    bool span_equals = false;
    bool parity_ok = false;
    bool flatness_ok = false;
    bool band_stable = true;
    double residual_max = 0.0;
    std::map<std::string, double> timings_ms;
    std::vector<std::string> warnings;
};

struct VerifyOptions {
    double svd_tol = 1e-8;
    Exec exec = Exec::parallel;
    bool check_band_stability = true;
};

template <class S>
struct VerifyOutcome {
    VerificationReport report;
    KernelBasis<S> kernel;
};

// End-to-end check of the main structure theorem for one configuration:
// kernel of the assembled operator vs the monomial span, dimension formula,
// parity/flatness of the kernel subspace, and dimension stability at band+1.
template <class S>
VerifyOutcome<S> verify_theorem(int n, int p, const ConformalFactor& F,
                                const std::vector<int>& band_spec, const VerifyOptions& opt = {}) {
    if (F.is_flat())
        throw std::invalid_argument("verify_theorem: requires a nonflat factor");
    using clock = std::chrono::steady_clock;
    auto ms_since = [](clock::time_point t0) {
        return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    };
    VerifyOutcome<S> out;
    VerificationReport& rep = out.report;
    rep.n = n;
    rep.p = p;
    rep.factor = F;
    rep.band = broadcast_band(n, band_spec);
    rep.mode = scalar_ops<S>::exact ? ArithMode::exact : ArithMode::floating;

    KernelOptions kopt{opt.svd_tol, opt.exec};
    auto t0 = clock::now();
    out.kernel = compute_kernel<S>(n, p, F, rep.band, OperatorVariant::killing, kopt);
    rep.timings_ms["kernel"] = ms_since(t0);
    rep.kernel_dim = out.kernel.dimension;
    rep.residual_max = out.kernel.residual_max;
    rep.warnings = out.kernel.warnings;

    rep.predicted_dim = predicted_dimension(n, p, F);

    t0 = clock::now();
    auto span = span_basis<S>(n, p, F);
    auto cmp = subspace_compare(out.kernel.basis, span);
    rep.span_contained = cmp.contained;
    rep.span_equals = cmp.equal && rep.kernel_dim == rep.predicted_dim;

    // Parity/flatness of the kernel as a subspace: each member individually,
    // and containment in the parity-even flat-coefficient subspace.
    bool parity = true, flat = true;
    for (const auto& K : out.kernel.basis) {
        auto pf = parity_and_flatness(K);
        parity = parity && pf.parity_ok;
        flat = flat && pf.flatness_ok;
    }
    if (parity && flat && !out.kernel.basis.empty()) {
        std::vector<SymTensorField<S>> W;
        const int axis_band = rep.band[n - 1] + 1;
        for (const auto& a : multi_indices(n, p)) {
            if (a[n - 1] % 2 != 0) continue;
            for (int k = 0; k <= axis_band; ++k) {
                std::vector<int> freq(n, 0);
                freq[n - 1] = k;
                W.push_back(SymTensorField<S>::monomial(a, TorusScalar<S>::cosine(n, freq)));
                if (k > 0)
                    W.push_back(SymTensorField<S>::monomial(a, TorusScalar<S>::sine(n, freq)));
            }
        }
        auto sub = subspace_compare(W, out.kernel.basis);
        parity = flat = sub.contained;
    }
    rep.parity_ok = parity;
    rep.flatness_ok = flat;
    rep.timings_ms["compare"] = ms_since(t0);

    if (opt.check_band_stability) {
        t0 = clock::now();
        std::vector<int> wider = rep.band;
        wider[n - 1] += 1;
        auto stable = compute_kernel<S>(n, p, F, wider, OperatorVariant::killing, kopt);
        rep.band_stable = stable.dimension == rep.kernel_dim;
        if (!rep.band_stable)
            rep.warnings.push_back("kernel dimension changed under band growth");
        rep.timings_ms["stability"] = ms_since(t0);
    }
    return out;
}

}  // namespace kt

#endif
