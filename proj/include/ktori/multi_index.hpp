#ifndef KTORI_MULTI_INDEX_HPP
#define KTORI_MULTI_INDEX_HPP

#include <numeric>
#include <vector>

namespace kt {

// Exponent vector of a momentum monomial y^a. Lexicographic order on the
// exponent vector is the canonical storage order everywhere.
struct MultiIndex {
    std::vector<int> exps;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> e) : exps(std::move(e)) {}
    static MultiIndex zero(int n) { return MultiIndex(std::vector<int>(n, 0)); }
    static MultiIndex unit(int n, int axis) {
        MultiIndex a = zero(n);
        a.exps[axis] = 1;
        return a;
    }

    int n() const { return static_cast<int>(exps.size()); }
    int degree() const { return std::accumulate(exps.begin(), exps.end(), 0); }
    int operator[](int i) const { return exps[i]; }

    bool operator==(const MultiIndex& o) const { return exps == o.exps; }
    bool operator!=(const MultiIndex& o) const { return exps != o.exps; }
    bool operator<(const MultiIndex& o) const { return exps < o.exps; }
};

inline MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r = a;
    for (std::size_t i = 0; i < r.exps.size(); ++i) r.exps[i] += b.exps[i];
    return r;
}

// All multi-indices over n axes with the given total degree, lex sorted.
std::vector<MultiIndex> multi_indices(int n, int degree);

inline long long factorial(int k) {
    long long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Product of entry factorials; the weight of the apolarity pairing.
inline long long multi_factorial(const MultiIndex& a) {
    long long f = 1;
    for (int e : a.exps) f *= factorial(e);
    return f;
}

}  // namespace kt

#endif
