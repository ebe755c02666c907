#ifndef KTORI_SYM_TENSOR_HPP
#define KTORI_SYM_TENSOR_HPP

#include <map>

#include "ktori/multi_index.hpp"
#include "ktori/torus_scalar.hpp"

namespace kt {

// Symmetric p-tensor field on T^n in the normalized momentum-polynomial
// representation N_K(x, y) = K(y,...,y)/p! = sum_a c_a(x) y^a. With this
// normalization the symmetric product is the plain polynomial product,
// contraction is the momentum directional derivative, Lambda the momentum
// Laplacian, and the induced scalar product the apolarity pairing
// sum_a a! c_a d_a. The multilinear form is recovered through eval: the form
// value K(y,...,y) equals p! * N_K(y).
template <class S>
struct SymTensorField {
    int n = 0;
    int p = 0;
    std::map<MultiIndex, TorusScalar<S>> coeffs;

    SymTensorField() = default;
    SymTensorField(int n_, int p_) : n(n_), p(p_) {}

    static SymTensorField zero(int n, int p) { return SymTensorField(n, p); }

    static SymTensorField monomial(const MultiIndex& a, TorusScalar<S> c) {
        SymTensorField K(a.n(), a.degree());
        if (!c.is_zero()) K.coeffs[a] = std::move(c);
        return K;
    }

    static SymTensorField scalar(int n, TorusScalar<S> c) {
        return monomial(MultiIndex::zero(n), std::move(c));
    }

    // e_i as a degree-1 tensor.
    static SymTensorField basis_vector(int n, int axis) {
        return monomial(MultiIndex::unit(n, axis), TorusScalar<S>::constant(n, scalar_ops<S>::one()));
    }

    static SymTensorField constant_vector(int n, const std::vector<S>& v) {
        SymTensorField K(n, 1);
        for (int i = 0; i < n; ++i)
            if (!scalar_ops<S>::is_zero(v[i]))
                K.coeffs[MultiIndex::unit(n, i)] = TorusScalar<S>::constant(n, v[i]);
        return K;
    }

    bool is_zero() const { return coeffs.empty(); }

    void add_coeff(const MultiIndex& a, const TorusScalar<S>& c) {
        auto it = coeffs.find(a);
        if (it == coeffs.end()) {
            if (!c.is_zero()) coeffs[a] = c;
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) coeffs.erase(it);
        }
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& [a, c] : coeffs) m = std::max(m, c.max_abs());
        return m;
    }

    void prune() {
        double floor = scalar_ops<S>::exact ? 0.0 : 1e-14 * max_abs();
        for (auto it = coeffs.begin(); it != coeffs.end();) {
            it->second.prune_floor(floor);
            if (it->second.is_zero())
                it = coeffs.erase(it);
            else
                ++it;
        }
    }

    std::vector<int> coeff_band() const {
        std::vector<int> b(n, 0);
        for (const auto& [a, c] : coeffs)
            for (const auto& [k, cs] : c.terms)
                for (int i = 0; i < n; ++i) b[i] = std::max(b[i], std::abs(k[i]));
        return b;
    }

    // Zero tensors compare equal across degrees: a vanished contraction or
    // trace carries a degenerate degree tag.
    bool operator==(const SymTensorField& o) const {
        if (n != o.n) return false;
        if (coeffs.empty() && o.coeffs.empty()) return true;
        return p == o.p && coeffs == o.coeffs;
    }
};

template <class S>
SymTensorField<S> operator+(const SymTensorField<S>& A, const SymTensorField<S>& B) {
    if (A.n != B.n || (A.p != B.p && !A.is_zero() && !B.is_zero()))
        throw std::invalid_argument("tensor sum: shape mismatch");
    if (A.is_zero()) return B;
    SymTensorField<S> R = A;
    for (const auto& [a, c] : B.coeffs) R.add_coeff(a, c);
    R.prune();
    return R;
}

template <class S>
SymTensorField<S> operator-(const SymTensorField<S>& A, const SymTensorField<S>& B) {
    if (A.n != B.n || (A.p != B.p && !A.is_zero() && !B.is_zero()))
        throw std::invalid_argument("tensor difference: shape mismatch");
    SymTensorField<S> R = A;
    if (A.is_zero()) R.p = B.p;
    for (const auto& [a, c] : B.coeffs) R.add_coeff(a, -scalar_ops<S>::one() * c);
    R.prune();
    return R;
}

template <class S>
SymTensorField<S> operator*(const S& v, const SymTensorField<S>& A) {
    SymTensorField<S> R(A.n, A.p);
    if (scalar_ops<S>::is_zero(v)) return R;
    for (const auto& [a, c] : A.coeffs) R.coeffs[a] = v * c;
    R.prune();
    return R;
}

// Coefficient-wise multiplication by a scalar function.
template <class S>
SymTensorField<S> scalar_field_mul(const TorusScalar<S>& u, const SymTensorField<S>& A) {
    SymTensorField<S> R(A.n, A.p);
    for (const auto& [a, c] : A.coeffs) {
        auto prod = ts_mul(u, c);
        if (!prod.is_zero()) R.coeffs[a] = std::move(prod);
    }
    R.prune();
    return R;
}

// Symmetric product: the plain product of the normalized polynomials. The
// un-normalized form value of the product carries binomial(p+q, p) relative
// to the factors' form values.
template <class S>
SymTensorField<S> sym_mul(const SymTensorField<S>& A, const SymTensorField<S>& B) {
    if (A.n != B.n) throw std::invalid_argument("sym_mul: dimension mismatch");
    SymTensorField<S> R(A.n, A.p + B.p);
    for (const auto& [a, ca] : A.coeffs)
        for (const auto& [b, cb] : B.coeffs) R.add_coeff(a + b, ts_mul(ca, cb));
    R.prune();
    return R;
}

// Contraction v -| K: the directional derivative of N_K in momentum space.
// Degree 0 contracts to the zero tensor.
template <class S>
SymTensorField<S> contract(const std::vector<S>& v, const SymTensorField<S>& K) {
    if (static_cast<int>(v.size()) != K.n) throw std::invalid_argument("contract: dimension mismatch");
    SymTensorField<S> R(K.n, K.p > 0 ? K.p - 1 : 0);
    if (K.p == 0) return R;
    for (const auto& [a, c] : K.coeffs) {
        for (int i = 0; i < K.n; ++i) {
            if (a[i] == 0 || scalar_ops<S>::is_zero(v[i])) continue;
            MultiIndex b = a;
            b.exps[i] -= 1;
            R.add_coeff(b, (v[i] * scalar_ops<S>::from_int(a[i])) * c);
        }
    }
    R.prune();
    return R;
}

// xi_axis -| K without building the unit vector.
template <class S>
SymTensorField<S> contract_axis(int axis, const SymTensorField<S>& K) {
    SymTensorField<S> R(K.n, K.p > 0 ? K.p - 1 : 0);
    if (K.p == 0) return R;
    for (const auto& [a, c] : K.coeffs) {
        if (a[axis] == 0) continue;
        MultiIndex b = a;
        b.exps[axis] -= 1;
        R.add_coeff(b, scalar_ops<S>::from_int(a[axis]) * c);
    }
    R.prune();
    return R;
}

// The induced scalar product g(A, B) = sum_a a! c_a(x) d_a(x).
template <class S>
TorusScalar<S> inner(const SymTensorField<S>& A, const SymTensorField<S>& B) {
    if (A.n != B.n || A.p != B.p) throw std::invalid_argument("inner: degree mismatch");
    TorusScalar<S> r = TorusScalar<S>::zero(A.n);
    for (const auto& [a, ca] : A.coeffs) {
        auto it = B.coeffs.find(a);
        if (it == B.coeffs.end()) continue;
        r = r + scalar_ops<S>::from_int(multi_factorial(a)) * ts_mul(ca, it->second);
    }
    r.prune();
    return r;
}

// L . K with L = 2g: multiplies the momentum polynomial by |y|^2.
template <class S>
SymTensorField<S> l_mul(const SymTensorField<S>& K) {
    SymTensorField<S> R(K.n, K.p + 2);
    for (const auto& [a, c] : K.coeffs) {
        for (int i = 0; i < K.n; ++i) {
            MultiIndex b = a;
            b.exps[i] += 2;
            R.add_coeff(b, c);
        }
    }
    R.prune();
    return R;
}

// Lambda = sum_i e_i -| e_i -| : the momentum-space Laplacian. Degrees < 2
// map to zero.
template <class S>
SymTensorField<S> lambda_op(const SymTensorField<S>& K) {
    SymTensorField<S> R(K.n, K.p >= 2 ? K.p - 2 : 0);
    if (K.p < 2) return R;
    for (const auto& [a, c] : K.coeffs) {
        for (int i = 0; i < K.n; ++i) {
            if (a[i] < 2) continue;
            MultiIndex b = a;
            b.exps[i] -= 2;
            R.add_coeff(b, scalar_ops<S>::from_int(static_cast<long long>(a[i]) * (a[i] - 1)) * c);
        }
    }
    R.prune();
    return R;
}

// K = sum_j L^j K_j with Lambda K_j = 0 (harmonic decomposition of the
// momentum polynomial).
template <class S>
struct StandardDecomposition {
    std::vector<SymTensorField<S>> parts;

    SymTensorField<S> reconstruct() const {
        SymTensorField<S> K = parts.empty() ? SymTensorField<S>() : parts[0];
        for (std::size_t j = 1; j < parts.size(); ++j) {
            SymTensorField<S> t = parts[j];
            for (std::size_t i = 0; i < j; ++i) t = l_mul(t);
            K = K + t;
        }
        return K;
    }
};

// Unique splitting; the recursion divides by 2j(n + 2p - 2j - 2), positive in
// the legal range for n >= 1.
template <class S>
StandardDecomposition<S> standard_decompose(const SymTensorField<S>& K) {
    StandardDecomposition<S> D;
    if (K.p <= 1) {
        D.parts.push_back(K);
        return D;
    }
    const int m = K.p / 2;
    StandardDecomposition<S> sub = standard_decompose(lambda_op(K));
    D.parts.assign(m + 1, SymTensorField<S>::zero(K.n, 0));
    SymTensorField<S> tail = SymTensorField<S>::zero(K.n, K.p);
    for (int j = m; j >= 1; --j) {
        long long denom = 2ll * j * (K.n + 2 * K.p - 2 * j - 2);
        SymTensorField<S> hj = j - 1 < static_cast<int>(sub.parts.size())
                                   ? scalar_ops<S>::div_int(scalar_ops<S>::one(), denom) * sub.parts[j - 1]
                                   : SymTensorField<S>::zero(K.n, K.p - 2 * j);
        D.parts[j] = hj;
        for (int i = 0; i < j; ++i) hj = l_mul(hj);
        tail = tail + hj;
    }
    D.parts[0] = K - tail;
    return D;
}

// Trace-free projection of v . K for a trace-free K:
//   (v.K)_0 = v.K - (1/(n+2(p-1))) L (v -| K).
// For p = 0 the contraction term is zero and the coefficient is never formed,
// so the n = 2 denominator degeneracy cannot occur.
template <class S>
SymTensorField<S> tf_part_of_vector_mul(const std::vector<S>& v, const SymTensorField<S>& K,
                                        bool check_trace_free = true) {
    if (check_trace_free && !lambda_op(K).is_zero())
        throw std::invalid_argument("tf_part_of_vector_mul: input not trace-free");
    SymTensorField<S> R = sym_mul(SymTensorField<S>::constant_vector(K.n, v), K);
    if (K.p >= 1) {
        S coeff = scalar_ops<S>::div_int(scalar_ops<S>::one(), K.n + 2 * (K.p - 1));
        R = R - coeff * l_mul(contract(v, K));
    }
    return R;
}

// N_K(x, y); the multilinear form value K(y,...,y) is p! times this.
template <class S>
double eval(const SymTensorField<S>& K, const std::vector<double>& x, const std::vector<double>& y) {
    double v = 0.0;
    for (const auto& [a, c] : K.coeffs) {
        double mono = 1.0;
        for (int i = 0; i < K.n; ++i)
            for (int e = 0; e < a[i]; ++e) mono *= y[i];
        v += c.eval_at(x) * mono;
    }
    return v;
}

// Exact momentum evaluation: N_K(., y) as a scalar function on the torus.
template <class S>
TorusScalar<S> eval_momentum(const SymTensorField<S>& K, const std::vector<S>& y) {
    TorusScalar<S> r = TorusScalar<S>::zero(K.n);
    for (const auto& [a, c] : K.coeffs) {
        S mono = scalar_ops<S>::one();
        for (int i = 0; i < K.n; ++i)
            for (int e = 0; e < a[i]; ++e) mono = mono * y[i];
        r = r + mono * c;
    }
    r.prune();
    return r;
}

template <class S>
SymTensorField<S> convert_field(const SymTensorField<Rational>& K) {
    SymTensorField<S> R(K.n, K.p);
    for (const auto& [a, c] : K.coeffs) {
        auto cs = convert_scalar<S>(c);
        if (!cs.is_zero()) R.coeffs[a] = std::move(cs);
    }
    return R;
}

}  // namespace kt

#endif
