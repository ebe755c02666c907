#include "ktori/multi_index.hpp"

#include <algorithm>

namespace kt {

namespace {
void gen(int n, int axis, int remaining, std::vector<int>& cur, std::vector<MultiIndex>& out) {
    if (axis == n - 1) {
        cur[axis] = remaining;
        out.emplace_back(cur);
        return;
    }
    for (int e = 0; e <= remaining; ++e) {
        cur[axis] = e;
        gen(n, axis + 1, remaining - e, cur, out);
    }
}
}  // namespace

std::vector<MultiIndex> multi_indices(int n, int degree) {
    std::vector<MultiIndex> out;
    if (n <= 0 || degree < 0) return out;
    std::vector<int> cur(n, 0);
    gen(n, 0, degree, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace kt
