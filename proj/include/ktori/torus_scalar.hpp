#ifndef KTORI_TORUS_SCALAR_HPP
#define KTORI_TORUS_SCALAR_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "ktori/scalar_ops.hpp"

namespace kt {

struct unsupported_operation : std::logic_error {
    using std::logic_error::logic_error;
};

// Truncated real trigonometric series on T^n. Terms are stored on canonical
// frequency vectors (k = 0 or first nonzero entry positive) as a pair of
// cosine/sine amplitudes, so real-valuedness is structural. The per-axis band
// records the declared frequency bound; products grow it additively and no
// term is ever truncated.
template <class S>
struct TorusScalar {
    using Terms = std::map<std::vector<int>, std::pair<S, S>>;

    int n = 0;
    std::vector<int> band;
    Terms terms;

    TorusScalar() = default;
    TorusScalar(int n_, std::vector<int> band_) : n(n_), band(std::move(band_)) {}

    static TorusScalar zero(int n) { return TorusScalar(n, std::vector<int>(n, 0)); }

    static TorusScalar constant(int n, S v) {
        TorusScalar u = zero(n);
        if (!scalar_ops<S>::is_zero(v)) u.terms[std::vector<int>(n, 0)] = {v, scalar_ops<S>::zero()};
        return u;
    }

    // c*cos(k.x) + s*sin(k.x); k need not be canonical.
    static TorusScalar mode(int n, const std::vector<int>& k, S c, S s) {
        TorusScalar u(n, std::vector<int>(n, 0));
        for (int i = 0; i < n; ++i) u.band[i] = std::abs(k[i]);
        u.add_term(k, c, s);
        u.prune();
        return u;
    }

    static TorusScalar cosine(int n, const std::vector<int>& k) {
        return mode(n, k, scalar_ops<S>::one(), scalar_ops<S>::zero());
    }
    static TorusScalar sine(int n, const std::vector<int>& k) {
        return mode(n, k, scalar_ops<S>::zero(), scalar_ops<S>::one());
    }

    bool is_zero() const { return terms.empty(); }

    // Inserts c*cos(k.x) + s*sin(k.x), canonicalizing the frequency.
    void add_term(std::vector<int> k, S c, S s) {
        bool zero_freq = true;
        bool flip = false;
        for (int v : k) {
            if (v != 0) {
                zero_freq = false;
                flip = v < 0;
                break;
            }
        }
        if (zero_freq) {
            if (scalar_ops<S>::is_zero(c)) return;
            auto& slot = terms[std::move(k)];
            slot.first = slot.first + c;
            return;
        }
        if (flip) {
            for (int& v : k) v = -v;
            s = -s;
        }
        auto& slot = terms[std::move(k)];
        slot.first = slot.first + c;
        slot.second = slot.second + s;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& [k, cs] : terms) {
            m = std::max(m, scalar_ops<S>::abs_double(cs.first));
            m = std::max(m, scalar_ops<S>::abs_double(cs.second));
        }
        return m;
    }

    void prune() { prune_floor(scalar_ops<S>::exact ? 0.0 : 1e-14 * max_abs()); }

    void prune_floor(double floor) {
        for (auto it = terms.begin(); it != terms.end();) {
            auto drop = [&](S& v) {
                if (!scalar_ops<S>::is_zero(v) && scalar_ops<S>::abs_double(v) <= floor)
                    v = scalar_ops<S>::zero();
            };
            if (!scalar_ops<S>::exact) {
                drop(it->second.first);
                drop(it->second.second);
            }
            if (scalar_ops<S>::is_zero(it->second.first) && scalar_ops<S>::is_zero(it->second.second))
                it = terms.erase(it);
            else
                ++it;
        }
    }

    S mean() const {
        auto it = terms.find(std::vector<int>(n, 0));
        return it == terms.end() ? scalar_ops<S>::zero() : it->second.first;
    }

    double eval_at(const std::vector<double>& x) const {
        double v = 0.0;
        for (const auto& [k, cs] : terms) {
            double phase = 0.0;
            for (int i = 0; i < n; ++i) phase += k[i] * x[i];
            v += scalar_ops<S>::to_double(cs.first) * std::cos(phase) +
                 scalar_ops<S>::to_double(cs.second) * std::sin(phase);
        }
        return v;
    }

    bool operator==(const TorusScalar& o) const { return n == o.n && terms == o.terms; }
};

template <class S>
std::vector<int> band_max(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

template <class S>
TorusScalar<S> operator+(const TorusScalar<S>& a, const TorusScalar<S>& b) {
    if (a.n != b.n) throw std::invalid_argument("TorusScalar: dimension mismatch");
    TorusScalar<S> r(a.n, band_max<S>(a.band, b.band));
    r.terms = a.terms;
    for (const auto& [k, cs] : b.terms) {
        auto& slot = r.terms[k];
        slot.first = slot.first + cs.first;
        slot.second = slot.second + cs.second;
    }
    r.prune();
    return r;
}

template <class S>
TorusScalar<S> operator-(const TorusScalar<S>& a, const TorusScalar<S>& b) {
    if (a.n != b.n) throw std::invalid_argument("TorusScalar: dimension mismatch");
    TorusScalar<S> r(a.n, band_max<S>(a.band, b.band));
    r.terms = a.terms;
    for (const auto& [k, cs] : b.terms) {
        auto& slot = r.terms[k];
        slot.first = slot.first - cs.first;
        slot.second = slot.second - cs.second;
    }
    r.prune();
    return r;
}

template <class S>
TorusScalar<S> operator*(const S& c, const TorusScalar<S>& u) {
    TorusScalar<S> r(u.n, u.band);
    if (scalar_ops<S>::is_zero(c)) return r;
    for (const auto& [k, cs] : u.terms) r.terms[k] = {c * cs.first, c * cs.second};
    r.prune();
    return r;
}

// Exact product via the product-to-sum identities; per-axis band adds.
template <class S>
TorusScalar<S> ts_mul(const TorusScalar<S>& a, const TorusScalar<S>& b) {
    if (a.n != b.n) throw std::invalid_argument("ts_mul: dimension mismatch");
    TorusScalar<S> r(a.n, {});
    r.band.resize(a.n);
    for (int i = 0; i < a.n; ++i) r.band[i] = a.band[i] + b.band[i];
    std::vector<int> plus(a.n), minus(a.n);
    for (const auto& [k, cs1] : a.terms) {
        for (const auto& [l, cs2] : b.terms) {
            const S& c1 = cs1.first;
            const S& s1 = cs1.second;
            const S& c2 = cs2.first;
            const S& s2 = cs2.second;
            for (int i = 0; i < a.n; ++i) {
                plus[i] = k[i] + l[i];
                minus[i] = k[i] - l[i];
            }
            // cos(k)cos(l) = (cos(k-l)+cos(k+l))/2, etc.
            r.add_term(minus, scalar_ops<S>::div_int(c1 * c2 + s1 * s2, 2),
                       scalar_ops<S>::div_int(s1 * c2 - c1 * s2, 2));
            r.add_term(plus, scalar_ops<S>::div_int(c1 * c2 - s1 * s2, 2),
                       scalar_ops<S>::div_int(c1 * s2 + s1 * c2, 2));
        }
    }
    r.prune();
    return r;
}

// Term-wise coordinate derivative; the band is unchanged.
template <class S>
TorusScalar<S> ts_partial(const TorusScalar<S>& u, int axis) {
    if (axis < 0 || axis >= u.n) throw std::invalid_argument("ts_partial: axis out of range");
    TorusScalar<S> r(u.n, u.band);
    for (const auto& [k, cs] : u.terms) {
        if (k[axis] == 0) continue;
        S f = scalar_ops<S>::from_int(k[axis]);
        // d/dx (c cos + s sin) = (s k) cos - (c k) sin
        r.add_term(k, f * cs.second, -(f * cs.first));
    }
    r.prune();
    return r;
}

// Reciprocals of trigonometric polynomials are not band-limited, so the ring
// has no division. Kept as an explicit trap per the API contract.
template <class S>
TorusScalar<S> ts_div(const TorusScalar<S>&, const TorusScalar<S>&) {
    throw unsupported_operation("TorusScalar: division is not closed on trigonometric polynomials");
}

template <class S>
TorusScalar<S> convert_scalar(const TorusScalar<Rational>& u) {
    TorusScalar<S> r(u.n, u.band);
    for (const auto& [k, cs] : u.terms)
        r.terms[k] = {scalar_ops<S>::from_rational(cs.first), scalar_ops<S>::from_rational(cs.second)};
    r.prune();
    return r;
}

}  // namespace kt

#endif
