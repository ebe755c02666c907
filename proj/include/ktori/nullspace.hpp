#ifndef KTORI_NULLSPACE_HPP
#define KTORI_NULLSPACE_HPP

#include <string>
#include <vector>

#include "ktori/operator_assembly.hpp"
#include "ktori/parallel.hpp"

namespace kt {

// Sparse integer rows kept primitive (content divided out); elimination is
// fraction-free cross-multiplication, so no rational arithmetic happens until
// back-substitution.
struct ExactRow {
    std::vector<std::pair<int, BigInt>> e;  // sorted by column
};

struct ExactEchelon {
    std::vector<ExactRow> rows;
    std::vector<std::pair<int, int>> pivots;  // (column, row id), increasing column
    std::vector<int> free_cols;
    int cols = 0;
};

ExactEchelon exact_echelon(std::vector<ExactRow> rows, int cols);

// Kernel basis as primitive integer vectors, first nonzero entry positive,
// one vector per free column in column order.
std::vector<std::vector<Rational>> exact_kernel_vectors(const ExactEchelon& ech);

std::vector<ExactRow> rows_from_rational(const std::vector<std::vector<Rational>>& dense);

int rank_exact(const std::vector<std::vector<Rational>>& dense_rows);
int rank_float(const std::vector<std::vector<double>>& dense_rows, double rel_tol = 1e-10);

template <class S>
struct NullspaceResult {
    std::vector<std::vector<S>> basis;  // kernel vectors over the column space
    int rank = 0;
    std::vector<double> singular_values;  // float mode only, descending
    std::vector<std::string> warnings;
};

NullspaceResult<Rational> nullspace_exact(const SparseLinearMap<Rational>& M);

// Right singular vectors with sigma < tol * sigma_max. Warns when any sigma
// falls within a factor 100 of the threshold on either side.
NullspaceResult<double> nullspace_float(const SparseLinearMap<double>& M, double tol = 1e-8,
                                        Exec exec = Exec::parallel);

// One-sided Jacobi on the columns of a (stored column-major); returns the
// singular values (unsorted, per column) and accumulated right vectors.
struct JacobiSvd {
    std::vector<double> sigma;
    std::vector<std::vector<double>> v_cols;
    int sweeps = 0;
};

JacobiSvd jacobi_svd(std::vector<std::vector<double>> a_cols, Exec exec);

}  // namespace kt

#endif
