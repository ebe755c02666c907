#ifndef KTORI_OPERATOR_ASSEMBLY_HPP
#define KTORI_OPERATOR_ASSEMBLY_HPP

#include <cstdio>
#include <string>
#include <tuple>

#include "ktori/diff_ops.hpp"
#include "ktori/parallel.hpp"

namespace kt {

enum class OperatorVariant { killing, conformal_killing };

inline std::string to_string(OperatorVariant v) {
    return v == OperatorVariant::killing ? "killing" : "conformal_killing";
}

// All canonical frequency vectors (first nonzero entry positive, plus zero)
// within the per-axis band, lex sorted.
std::vector<std::vector<int>> canonical_freqs(const std::vector<int>& band);

// Real scalar dimensions of a band-limited TorusScalar: one cosine slot per
// canonical frequency plus a sine slot for every nonzero one.
struct ScalarLayout {
    std::vector<std::vector<int>> freqs;
    std::map<std::vector<int>, int> freq_index;
    std::vector<int> offsets;  // slot offset of each canonical frequency
    int dims = 0;              // total cos/sin slots

    explicit ScalarLayout(const std::vector<int>& band);
    // slot 0 = cos, 1 = sin.
    int position(const std::vector<int>& freq, int slot) const;
};

// One cos/sin coefficient of one momentum monomial; the index sets of the
// assembled operator. Ordered multi-index-major, then frequency lexicographic,
// then cos before sin.
struct BasisKey {
    MultiIndex monomial;
    std::vector<int> freq;
    int slot = 0;
};

struct FieldLayout {
    int n = 0, degree = 0;
    std::vector<int> band;
    std::vector<MultiIndex> monomials;
    std::map<MultiIndex, int> monomial_index;
    ScalarLayout scalars;

    FieldLayout(int n_, int degree_, std::vector<int> band_);
    int size() const { return static_cast<int>(monomials.size()) * scalars.dims; }
    BasisKey key(int index) const;
    int position(const MultiIndex& a, const std::vector<int>& freq, int slot) const;
};

template <class S>
std::vector<S> field_to_vec(const SymTensorField<S>& K, const FieldLayout& layout) {
    std::vector<S> v(layout.size(), scalar_ops<S>::zero());
    for (const auto& [a, c] : K.coeffs) {
        for (const auto& [k, cs] : c.terms) {
            if (!scalar_ops<S>::is_zero(cs.first))
                v[layout.position(a, k, 0)] = cs.first;
            if (!scalar_ops<S>::is_zero(cs.second))
                v[layout.position(a, k, 1)] = cs.second;
        }
    }
    return v;
}

template <class S>
SymTensorField<S> vec_to_field(const std::vector<S>& v, const FieldLayout& layout) {
    SymTensorField<S> K(layout.n, layout.degree);
    for (int i = 0; i < layout.size(); ++i) {
        if (scalar_ops<S>::is_zero(v[i])) continue;
        BasisKey key = layout.key(i);
        TorusScalar<S> c(layout.n, layout.band);
        if (key.slot == 0)
            c.add_term(key.freq, v[i], scalar_ops<S>::zero());
        else
            c.add_term(key.freq, scalar_ops<S>::zero(), v[i]);
        K.add_coeff(key.monomial, c);
    }
    return K;
}

// Sparse matrix of a residual operator over the band-limited basis. The row
// space carries the enlarged output band, so no output frequency is ever
// discarded: a kernel vector is an exact solution of the PDE restricted to
// band-limited fields. For the conformal_killing variant the rows additionally
// stack the trace constraint Lambda K = 0, restricting the kernel to
// trace-free fields.
template <class S>
struct SparseLinearMap {
    int n = 0, p_in = 0;
    OperatorVariant variant = OperatorVariant::killing;
    ConformalFactor factor;
    std::vector<int> band_in, band_out;

    FieldLayout cols;
    FieldLayout rows_residual;
    std::optional<FieldLayout> rows_trace;  // conformal_killing only

    // (row, col, value), sorted by row then col.
    std::vector<std::tuple<int, int, S>> entries;

    SparseLinearMap(FieldLayout c, FieldLayout r)
        : cols(std::move(c)), rows_residual(std::move(r)) {}

    int col_count() const { return cols.size(); }
    int row_count() const {
        return rows_residual.size() + (rows_trace ? rows_trace->size() : 0);
    }

    std::vector<S> apply(const std::vector<S>& x) const {
        std::vector<S> y(row_count(), scalar_ops<S>::zero());
        for (const auto& [r, c, v] : entries) y[r] = y[r] + v * x[c];
        return y;
    }

    // Coordinate-list text export, deterministic ordering.
    std::string to_coordinate_text() const {
        std::string out;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%d %d %zu\n", row_count(), col_count(), entries.size());
        out += buf;
        for (const auto& [r, c, v] : entries) {
            std::snprintf(buf, sizeof(buf), "%d %d ", r, c);
            out += buf;
            out += scalar_ops<S>::to_string(v);
            out += '\n';
        }
        return out;
    }
};

inline std::vector<int> broadcast_band(int n, const std::vector<int>& band) {
    if (static_cast<int>(band.size()) == n) return band;
    if (band.size() == 1) return std::vector<int>(n, band[0]);
    throw std::invalid_argument("band: expected one bound per axis");
}

template <class S>
SparseLinearMap<S> assemble_operator(int n, int p, const ConformalFactor& F,
                                     const std::vector<int>& band_spec, OperatorVariant variant,
                                     Exec exec = Exec::parallel,
                                     std::vector<std::string>* warnings = nullptr) {
    if (n < 1 || p < 0) throw std::invalid_argument("assemble_operator: bad (n, p)");
    std::vector<int> band = broadcast_band(n, band_spec);
    for (int b : band)
        if (b < 0) throw std::invalid_argument("assemble_operator: negative band");
    if (!F.is_flat() && variant == OperatorVariant::killing && band[n - 1] < 1)
        throw std::invalid_argument("assemble_operator: axis-n band must be >= 1 for nonflat factors");
    if (warnings && F.kind == ConformalFactor::Kind::inverse_trig && band[n - 1] < p / 2)
        warnings->push_back("axis-n band " + std::to_string(band[n - 1]) +
                            " is below floor(p/2) = " + std::to_string(p / 2) +
                            ": predicted solutions are not representable");

    std::vector<int> band_out = band;
    if (variant == OperatorVariant::killing) band_out[n - 1] += F.op_band();

    FieldLayout cols(n, p, band);
    FieldLayout rows(n, p + 1, band_out);
    SparseLinearMap<S> M(std::move(cols), std::move(rows));
    M.n = n;
    M.p_in = p;
    M.variant = variant;
    M.factor = F;
    M.band_in = band;
    M.band_out = band_out;
    if (variant == OperatorVariant::conformal_killing && p >= 2)
        M.rows_trace.emplace(n, p - 2, band);

    const int ncols = M.cols.size();
    const int trace_offset = M.rows_residual.size();
    std::vector<std::vector<std::pair<int, S>>> per_col(ncols);

    parallel_for(ncols, exec, [&](int ci) {
        BasisKey key = M.cols.key(ci);
        TorusScalar<S> c(n, M.band_in);
        if (key.slot == 0)
            c.add_term(key.freq, scalar_ops<S>::one(), scalar_ops<S>::zero());
        else
            c.add_term(key.freq, scalar_ops<S>::zero(), scalar_ops<S>::one());
        SymTensorField<S> basis = SymTensorField<S>::monomial(key.monomial, std::move(c));

        SymTensorField<S> res = variant == OperatorVariant::killing
                                    ? killing_residual(basis, F)
                                    : conformal_killing_residual(basis, false);
        auto& out = per_col[ci];
        for (const auto& [a, cf] : res.coeffs) {
            for (const auto& [k, cs] : cf.terms) {
                if (!scalar_ops<S>::is_zero(cs.first))
                    out.emplace_back(M.rows_residual.position(a, k, 0), cs.first);
                if (!scalar_ops<S>::is_zero(cs.second))
                    out.emplace_back(M.rows_residual.position(a, k, 1), cs.second);
            }
        }
        if (M.rows_trace) {
            SymTensorField<S> tr = lambda_op(basis);
            for (const auto& [a, cf] : tr.coeffs) {
                for (const auto& [k, cs] : cf.terms) {
                    if (!scalar_ops<S>::is_zero(cs.first))
                        out.emplace_back(trace_offset + M.rows_trace->position(a, k, 0), cs.first);
                    if (!scalar_ops<S>::is_zero(cs.second))
                        out.emplace_back(trace_offset + M.rows_trace->position(a, k, 1), cs.second);
                }
            }
        }
        std::sort(out.begin(), out.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
    });

    std::size_t total = 0;
    for (const auto& col : per_col) total += col.size();
    M.entries.reserve(total);
    for (int ci = 0; ci < ncols; ++ci)
        for (const auto& [r, v] : per_col[ci]) M.entries.emplace_back(r, ci, v);
    std::sort(M.entries.begin(), M.entries.end(), [](const auto& x, const auto& y) {
        if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) < std::get<0>(y);
        return std::get<1>(x) < std::get<1>(y);
    });
    return M;
}

}  // namespace kt

#endif
