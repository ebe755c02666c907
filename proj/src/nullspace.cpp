#include "ktori/nullspace.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>

namespace kt {

namespace {

// Divide out the gcd of the entries and normalize the leading sign.
void make_primitive(ExactRow& row) {
    if (row.e.empty()) return;
    BigInt g;
    for (const auto& [c, v] : row.e) {
        g = BigInt::gcd(g, v);
        if (g.is_one()) break;
    }
    bool flip = row.e.front().second.sign() < 0;
    if (!g.is_one() || flip) {
        if (flip) g = -g;
        for (auto& [c, v] : row.e) v = v / g;
    }
}

BigInt coeff_at(const ExactRow& row, int col) {
    auto it = std::lower_bound(row.e.begin(), row.e.end(), col,
                               [](const auto& p, int c) { return p.first < c; });
    return it != row.e.end() && it->first == col ? it->second : BigInt();
}

// target <- target * pivot_coeff - pivot_row * target_coeff (column col drops).
void eliminate(ExactRow& target, const ExactRow& pivot, int col) {
    BigInt tc = coeff_at(target, col);
    if (tc.is_zero()) return;
    BigInt pc = coeff_at(pivot, col);
    ExactRow out;
    out.e.reserve(target.e.size() + pivot.e.size());
    std::size_t i = 0, j = 0;
    while (i < target.e.size() || j < pivot.e.size()) {
        int ci = i < target.e.size() ? target.e[i].first : INT32_MAX;
        int cj = j < pivot.e.size() ? pivot.e[j].first : INT32_MAX;
        int c = std::min(ci, cj);
        BigInt v;
        if (ci == c) v = v + target.e[i++].second * pc;
        if (cj == c) v = v - pivot.e[j++].second * tc;
        if (!v.is_zero() && c != col) out.e.emplace_back(c, std::move(v));
    }
    make_primitive(out);
    target = std::move(out);
}

}  // namespace

std::vector<ExactRow> rows_from_rational(const std::vector<std::vector<Rational>>& dense) {
    std::vector<ExactRow> rows;
    rows.reserve(dense.size());
    for (const auto& r : dense) {
        BigInt l(1);
        for (const auto& v : r)
            if (!v.is_zero()) l = BigInt::lcm(l, v.den());
        ExactRow row;
        for (std::size_t c = 0; c < r.size(); ++c)
            if (!r[c].is_zero()) row.e.emplace_back(static_cast<int>(c), r[c].num() * (l / r[c].den()));
        make_primitive(row);
        if (!row.e.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

ExactEchelon exact_echelon(std::vector<ExactRow> rows, int cols) {
    ExactEchelon ech;
    ech.cols = cols;
    std::vector<ExactRow> active;
    for (auto& r : rows) {
        make_primitive(r);
        if (!r.e.empty()) active.push_back(std::move(r));
    }
    std::vector<bool> used(active.size(), false);
    for (int col = 0; col < cols; ++col) {
        // All unused rows have zeros in every previously visited column, so a
        // row touches this column iff its first entry sits here.
        int pivot = -1;
        std::size_t best_nnz = 0;
        for (std::size_t r = 0; r < active.size(); ++r) {
            if (used[r] || active[r].e.empty() || active[r].e.front().first != col) continue;
            if (pivot < 0 || active[r].e.size() < best_nnz) {
                pivot = static_cast<int>(r);
                best_nnz = active[r].e.size();
            }
        }
        if (pivot < 0) {
            ech.free_cols.push_back(col);
            continue;
        }
        used[pivot] = true;
        for (std::size_t r = 0; r < active.size(); ++r) {
            if (used[r] || active[r].e.empty() || active[r].e.front().first != col) continue;
            eliminate(active[r], active[pivot], col);
        }
        ech.pivots.emplace_back(col, static_cast<int>(ech.rows.size()));
        ech.rows.push_back(active[pivot]);
    }
    return ech;
}

std::vector<std::vector<Rational>> exact_kernel_vectors(const ExactEchelon& ech) {
    std::vector<std::vector<Rational>> basis;
    basis.reserve(ech.free_cols.size());
    for (int f : ech.free_cols) {
        std::vector<Rational> x(ech.cols, Rational());
        x[f] = Rational(1);
        for (std::size_t pi = ech.pivots.size(); pi-- > 0;) {
            auto [col, rid] = ech.pivots[pi];
            const ExactRow& row = ech.rows[rid];
            Rational acc;
            for (const auto& [c, v] : row.e) {
                if (c == col) continue;
                if (!x[c].is_zero()) acc += Rational(v, BigInt(1)) * x[c];
            }
            if (acc.is_zero())
                x[col] = Rational();
            else
                x[col] = -(acc / Rational(coeff_at(row, col), BigInt(1)));
        }
        // Scale to a primitive integer vector with positive leading entry.
        BigInt l(1);
        for (const auto& v : x)
            if (!v.is_zero()) l = BigInt::lcm(l, v.den());
        BigInt g;
        for (auto& v : x) {
            if (v.is_zero()) continue;
            v = Rational(v.num() * (l / v.den()), BigInt(1));
            g = BigInt::gcd(g, v.num());
        }
        int lead_sign = 0;
        for (const auto& v : x) {
            if (!v.is_zero()) {
                lead_sign = v.sign();
                break;
            }
        }
        if (lead_sign < 0) g = -g;
        if (!g.is_zero() && !g.is_one())
            for (auto& v : x)
                if (!v.is_zero()) v = Rational(v.num() / g, BigInt(1));
        basis.push_back(std::move(x));
    }
    return basis;
}

int rank_exact(const std::vector<std::vector<Rational>>& dense_rows) {
    if (dense_rows.empty()) return 0;
    int cols = static_cast<int>(dense_rows[0].size());
    auto ech = exact_echelon(rows_from_rational(dense_rows), cols);
    return static_cast<int>(ech.pivots.size());
}

int rank_float(const std::vector<std::vector<double>>& dense_rows, double rel_tol) {
    std::vector<std::vector<double>> m = dense_rows;
    if (m.empty()) return 0;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    double maxabs = 0.0;
    for (const auto& r : m)
        for (double v : r) maxabs = std::max(maxabs, std::fabs(v));
    if (maxabs == 0.0) return 0;
    const double tol = rel_tol * maxabs;
    int rank = 0;
    std::vector<bool> used(rows, false);
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        double best = tol;
        for (int r = 0; r < rows; ++r) {
            if (used[r]) continue;
            if (std::fabs(m[r][col]) > best) {
                best = std::fabs(m[r][col]);
                pivot = r;
            }
        }
        if (pivot < 0) continue;
        used[pivot] = true;
        ++rank;
        for (int r = 0; r < rows; ++r) {
            if (used[r] || m[r][col] == 0.0) continue;
            double f = m[r][col] / m[pivot][col];
            for (int c = col; c < cols; ++c) m[r][c] -= f * m[pivot][c];
        }
    }
    return rank;
}

NullspaceResult<Rational> nullspace_exact(const SparseLinearMap<Rational>& M) {
    // Group entries by row and clear denominators.
    std::map<int, std::vector<std::pair<int, Rational>>> by_row;
    for (const auto& [r, c, v] : M.entries) by_row[r].emplace_back(c, v);
    std::vector<ExactRow> rows;
    rows.reserve(by_row.size());
    for (auto& [r, entries] : by_row) {
        BigInt l(1);
        for (const auto& [c, v] : entries) l = BigInt::lcm(l, v.den());
        ExactRow row;
        row.e.reserve(entries.size());
        for (const auto& [c, v] : entries) row.e.emplace_back(c, v.num() * (l / v.den()));
        std::sort(row.e.begin(), row.e.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        make_primitive(row);
        rows.push_back(std::move(row));
    }
    auto ech = exact_echelon(std::move(rows), M.col_count());
    NullspaceResult<Rational> out;
    out.rank = static_cast<int>(ech.pivots.size());
    out.basis = exact_kernel_vectors(ech);
    return out;
}

JacobiSvd jacobi_svd(std::vector<std::vector<double>> a_cols, Exec exec) {
    JacobiSvd res;
    const int ncols = static_cast<int>(a_cols.size());
    res.v_cols.assign(ncols, std::vector<double>(ncols, 0.0));
    for (int i = 0; i < ncols; ++i) res.v_cols[i][i] = 1.0;
    if (ncols == 0) return res;

    const double orth_tol = 1e-15;
    const int max_sweeps = 60;

    auto rotate_pair = [&](int i, int j) -> bool {
        auto& ai = a_cols[i];
        auto& aj = a_cols[j];
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t k = 0; k < ai.size(); ++k) {
            alpha += ai[k] * ai[k];
            beta += aj[k] * aj[k];
            gamma += ai[k] * aj[k];
        }
        if (alpha == 0.0 || beta == 0.0) return false;
        if (std::fabs(gamma) <= orth_tol * std::sqrt(alpha * beta)) return false;
        double zeta = (beta - alpha) / (2.0 * gamma);
        double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        for (std::size_t k = 0; k < ai.size(); ++k) {
            double x = ai[k], y = aj[k];
            ai[k] = c * x - s * y;
            aj[k] = s * x + c * y;
        }
        auto& vi = res.v_cols[i];
        auto& vj = res.v_cols[j];
        for (int k = 0; k < ncols; ++k) {
            double x = vi[k], y = vj[k];
            vi[k] = c * x - s * y;
            vj[k] = s * x + c * y;
        }
        return true;
    };

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool changed = false;
        res.sweeps = sweep + 1;
#ifdef _OPENMP
        if (exec == Exec::parallel && ncols >= 8) {
            // Round-robin tournament: each round pairs disjoint columns, so
            // the rotations of one round are independent. One parallel region
            // per sweep; rounds are separated by the loop barriers.
            const int m = ncols + (ncols % 2);
            std::vector<int> ring(m);
            for (int i = 0; i < m; ++i) ring[i] = i;
            std::atomic<bool> any_changed{false};
#pragma omp parallel
            {
                bool local_changed = false;
                for (int round = 0; round < m - 1; ++round) {
#pragma omp for schedule(static)
                    for (int k = 0; k < m / 2; ++k) {
                        int a = ring[k], b = ring[m - 1 - k];
                        if (a < ncols && b < ncols)
                            local_changed =
                                rotate_pair(std::min(a, b), std::max(a, b)) || local_changed;
                    }
#pragma omp single
                    {
                        // Rotate the ring, keeping position 0 fixed.
                        int last = ring[m - 1];
                        for (int i = m - 1; i >= 2; --i) ring[i] = ring[i - 1];
                        ring[1] = last;
                    }
                }
                if (local_changed) any_changed.store(true, std::memory_order_relaxed);
            }
            changed = any_changed.load();
        } else
#else
        (void)exec;
#endif
        {
            for (int i = 0; i < ncols - 1; ++i)
                for (int j = i + 1; j < ncols; ++j) changed = rotate_pair(i, j) || changed;
        }
        if (!changed) break;
    }

    res.sigma.resize(ncols);
    for (int i = 0; i < ncols; ++i) {
        double s = 0.0;
        for (double v : a_cols[i]) s += v * v;
        res.sigma[i] = std::sqrt(s);
    }
    return res;
}

NullspaceResult<double> nullspace_float(const SparseLinearMap<double>& M, double tol, Exec exec) {
    NullspaceResult<double> out;
    const int ncols = M.col_count();
    const int nrows = M.row_count();
    std::vector<std::vector<double>> a_cols(ncols, std::vector<double>(nrows, 0.0));
    for (const auto& [r, c, v] : M.entries) a_cols[c][r] = v;

    JacobiSvd svd = jacobi_svd(std::move(a_cols), exec);
    double sigma_max = 0.0;
    for (double s : svd.sigma) sigma_max = std::max(sigma_max, s);
    if (sigma_max == 0.0) {
        // Zero operator: every column is kernel.
        for (int i = 0; i < ncols; ++i) out.basis.push_back(svd.v_cols[i]);
        out.singular_values.assign(ncols, 0.0);
        return out;
    }
    const double thr = tol * sigma_max;
    for (int i = 0; i < ncols; ++i) {
        if (svd.sigma[i] < thr)
            out.basis.push_back(svd.v_cols[i]);
        else
            ++out.rank;
        double s = svd.sigma[i];
        if (s > 0.0 && s >= thr / 100.0 && s <= thr * 100.0) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "ill-conditioned nullspace: sigma %.3e within a factor 100 of threshold %.3e",
                          s, thr);
            out.warnings.push_back(buf);
        }
    }
    std::vector<double> sorted = svd.sigma;
    std::sort(sorted.rbegin(), sorted.rend());
    out.singular_values = std::move(sorted);
    return out;
}

}  // namespace kt
