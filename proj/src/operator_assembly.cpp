#include "ktori/operator_assembly.hpp"

#include <functional>

namespace kt {

std::vector<std::vector<int>> canonical_freqs(const std::vector<int>& band) {
    const int n = static_cast<int>(band.size());
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n, 0);
    // Enumerate the full lattice, keep canonical representatives.
    auto canonical = [](const std::vector<int>& k) {
        for (int v : k) {
            if (v > 0) return true;
            if (v < 0) return false;
        }
        return true;  // zero
    };
    std::function<void(int)> walk = [&](int axis) {
        if (axis == n) {
            if (canonical(cur)) out.push_back(cur);
            return;
        }
        for (int v = -band[axis]; v <= band[axis]; ++v) {
            cur[axis] = v;
            walk(axis + 1);
        }
    };
    walk(0);
    std::sort(out.begin(), out.end());
    return out;
}

ScalarLayout::ScalarLayout(const std::vector<int>& band) : freqs(canonical_freqs(band)) {
    const std::vector<int> zero(band.size(), 0);
    offsets.resize(freqs.size());
    dims = 0;
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        freq_index[freqs[i]] = static_cast<int>(i);
        offsets[i] = dims;
        dims += (freqs[i] == zero ? 1 : 2);
    }
}

int ScalarLayout::position(const std::vector<int>& freq, int slot) const {
    auto it = freq_index.find(freq);
    if (it == freq_index.end()) throw std::out_of_range("ScalarLayout: frequency out of band");
    const std::vector<int> zero(freq.size(), 0);
    if (freq == zero && slot != 0)
        throw std::out_of_range("ScalarLayout: zero frequency has no sine slot");
    return offsets[it->second] + slot;
}

FieldLayout::FieldLayout(int n_, int degree_, std::vector<int> band_)
    : n(n_), degree(degree_), band(std::move(band_)), monomials(multi_indices(n_, degree_)),
      scalars(band) {
    for (std::size_t i = 0; i < monomials.size(); ++i)
        monomial_index[monomials[i]] = static_cast<int>(i);
}

BasisKey FieldLayout::key(int index) const {
    BasisKey k;
    int mi = index / scalars.dims;
    int rest = index % scalars.dims;
    k.monomial = monomials[mi];
    const std::vector<int> zero(n, 0);
    int pos = 0;
    for (const auto& f : scalars.freqs) {
        int width = f == zero ? 1 : 2;
        if (rest < pos + width) {
            k.freq = f;
            k.slot = rest - pos;
            return k;
        }
        pos += width;
    }
    throw std::out_of_range("FieldLayout: index out of range");
}

int FieldLayout::position(const MultiIndex& a, const std::vector<int>& freq, int slot) const {
    auto it = monomial_index.find(a);
    if (it == monomial_index.end()) throw std::out_of_range("FieldLayout: monomial out of range");
    return it->second * scalars.dims + scalars.position(freq, slot);
}

}  // namespace kt
