#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ktori/kernel_solve.hpp"
#include "ktori/ode_lemma.hpp"
#include "test_util.hpp"

using namespace kt;
namespace kte = kt::testing;

namespace {
ConformalFactor inv21() { return ConformalFactor::inverse_trig(Rational(2), Rational(1)); }
ConformalFactor exp1() { return ConformalFactor::trig_exponent(Rational(1)); }

// Independent oracle: enumerate the monomials xi^a L~^m with |a| + 2m = p.
long long enumerate_span(int n, int p) {
    long long count = 0;
    for (int m = 0; 2 * m <= p; ++m)
        count += static_cast<long long>(multi_indices(n - 1, p - 2 * m).size());
    return count;
}

SymTensorField<Rational> e(int n, int i) { return SymTensorField<Rational>::basis_vector(n, i); }
}  // namespace

TEST_CASE("nullspace of an explicit zero matrix has full dimension") {
    FieldLayout cols(2, 0, {1, 0});  // 3 scalar dims: const, cos x1, sin x1
    FieldLayout rows(2, 1, {1, 0});
    SparseLinearMap<Rational> M(cols, rows);
    CHECK(M.col_count() == 3);
    auto ns = nullspace_exact(M);
    CHECK(ns.rank == 0);
    CHECK(ns.basis.size() == 3);
}

TEST_CASE("flat p = 1 kernel at band 2 is the two translation fields") {
    auto kb = compute_kernel<Rational>(2, 1, ConformalFactor::flat(), {2, 2},
                                       OperatorVariant::killing);
    CHECK(kb.dimension == 2);
    for (const auto& K : kb.basis) CHECK(K.coeff_band() == std::vector<int>{0, 0});
}

TEST_CASE("inverse_trig p = 1 kernel at band 2 is xi_1 only") {
    auto kb = compute_kernel<Rational>(2, 1, inv21(), {2, 2}, OperatorVariant::killing);
    REQUIRE(kb.dimension == 1);
    auto cmp = subspace_compare(kb.basis, {e(2, 0)});
    CHECK(cmp.equal);
}

TEST_CASE("predicted dimensions match the enumeration oracle") {
    CHECK(predicted_dimension(2, 2, inv21()) == 2);
    CHECK(predicted_dimension(3, 2, inv21()) == 4);
    CHECK(predicted_dimension(2, 4, inv21()) == 3);
    CHECK(predicted_dimension(2, 3, inv21()) == 2);
    CHECK(predicted_dimension(2, 2, ConformalFactor::flat()) == 3);
    CHECK(predicted_dimension(3, 2, exp1()) == 3);
    for (int n = 2; n <= 4; ++n)
        for (int p = 0; p <= 6; ++p) {
            CHECK(predicted_dimension(n, p, inv21()) == enumerate_span(n, p));
            CHECK(predicted_dimension(n, p, ConformalFactor::flat()) ==
                  static_cast<long long>(multi_indices(n, p).size()));
            CHECK(predicted_dimension(n, p, exp1()) ==
                  static_cast<long long>(multi_indices(n - 1, p).size()));
        }
    CHECK_THROWS_AS(predicted_dimension(1, 2, inv21()), std::invalid_argument);
}

TEST_CASE("span basis members") {
    SUBCASE("(2,2) inverse_trig: y1^2 and phi |y|^2") {
        auto span = span_basis<Rational>(2, 2, inv21());
        REQUIRE(span.size() == 2);
        CHECK(span[0] == sym_mul(e(2, 0), e(2, 0)));
        auto Ltilde = scalar_field_mul(
            inv21().phi<Rational>(2),
            l_mul(SymTensorField<Rational>::scalar(2, TorusScalar<Rational>::constant(2, Rational(1)))));
        CHECK(span[1] == Ltilde);
    }
    SUBCASE("(2,1) nonflat spans are {y1}") {
        for (const auto& F : {inv21(), exp1()}) {
            auto span = span_basis<Rational>(2, 1, F);
            REQUIRE(span.size() == 1);
            CHECK(span[0] == e(2, 0));
        }
    }
    SUBCASE("every inverse_trig span member has zero killing residual") {
        for (int n = 2; n <= 3; ++n)
            for (int p = 1; p <= 4; ++p)
                for (const auto& K : span_basis<Rational>(n, p, inv21()))
                    CHECK(killing_residual(K, inv21()).is_zero());
    }
    SUBCASE("trig exponent span members are Killing and the count matches") {
        for (int p = 1; p <= 3; ++p) {
            auto span = span_basis<Rational>(3, p, exp1());
            CHECK(static_cast<long long>(span.size()) == predicted_dimension(3, p, exp1()));
            for (const auto& K : span) CHECK(killing_residual(K, exp1()).is_zero());
        }
    }
}

TEST_CASE("subspace comparison") {
    auto span = span_basis<Rational>(2, 2, inv21());
    SUBCASE("identical sets") {
        auto cmp = subspace_compare(span, span);
        CHECK(cmp.contained);
        CHECK(cmp.equal);
    }
    SUBCASE("proper subset") {
        std::vector<SymTensorField<Rational>> sub{span[0]};
        auto cmp = subspace_compare(span, sub);
        CHECK(cmp.contained);
        CHECK_FALSE(cmp.equal);
        auto rev = subspace_compare(sub, span);
        CHECK_FALSE(rev.contained);
    }
    SUBCASE("kernel equals span for (2,3) inverse_trig") {
        auto kb = compute_kernel<Rational>(2, 3, inv21(), {1, 3}, OperatorVariant::killing);
        auto cmp = subspace_compare(kb.basis, span_basis<Rational>(2, 3, inv21()));
        CHECK(cmp.equal);
    }
}

TEST_CASE("parity and flatness classification") {
    auto y1yn = sym_mul(e(2, 0), e(2, 1));
    CHECK_FALSE(parity_and_flatness(y1yn).parity_ok);
    CHECK(parity_and_flatness(y1yn).flatness_ok);

    auto Ltilde = scalar_field_mul(
        inv21().phi<Rational>(2),
        l_mul(SymTensorField<Rational>::scalar(2, TorusScalar<Rational>::constant(2, Rational(1)))));
    auto pf = parity_and_flatness(Ltilde);
    CHECK(pf.parity_ok);
    CHECK(pf.flatness_ok);

    auto wavy = SymTensorField<Rational>::monomial(MultiIndex({2, 0}),
                                                   TorusScalar<Rational>::cosine(2, {1, 0}));
    CHECK_FALSE(parity_and_flatness(wavy).flatness_ok);
}

TEST_CASE("verify_theorem end to end on (2,2) inverse_trig") {
    auto out = verify_theorem<Rational>(2, 2, inv21(), {2, 3});
    CHECK(out.report.kernel_dim == 2);
    CHECK(out.report.predicted_dim == 2);
    CHECK(out.report.span_contained);
    CHECK(out.report.span_equals);
    CHECK(out.report.parity_ok);
    CHECK(out.report.flatness_ok);
    CHECK(out.report.band_stable);
    CHECK(out.report.residual_max == 0.0);

    // Independent float SVD agrees on the dimension.
    auto fl = verify_theorem<double>(2, 2, inv21(), {2, 3});
    CHECK(fl.report.kernel_dim == 2);
    CHECK(fl.report.span_equals);
}

TEST_CASE("verify_theorem on (3,2) inverse_trig") {
    auto out = verify_theorem<Rational>(3, 2, inv21(), {1, 1, 3});
    CHECK(out.report.kernel_dim == 4);
    CHECK(out.report.span_equals);
    CHECK(out.report.parity_ok);
    CHECK(out.report.flatness_ok);
}

TEST_CASE("verify_theorem float mode on (2,2) trig exponent keeps only xi_1^2") {
    VerifyOptions opt;
    opt.check_band_stability = true;
    auto out = verify_theorem<double>(2, 2, exp1(), {2, 4}, opt);
    CHECK(out.report.kernel_dim == 1);
    CHECK(out.report.span_equals);
}

TEST_CASE("kernel members re-verify and are lie-invariant, alpha functions vanish") {
    for (const auto& F : {inv21(), exp1()}) {
        for (auto [n, p] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
            std::vector<int> band(n, 1);
            band[n - 1] = p / 2 + 1;
            auto kb = compute_kernel<Rational>(n, p, F, band, OperatorVariant::killing, {});
            CHECK(kb.residual_max == 0.0);
            // Basis independence via rank.
            auto cmpself = subspace_compare(kb.basis, kb.basis);
            CHECK(cmpself.equal);
            for (const auto& K : kb.basis) {
                CHECK(killing_residual(K, F).is_zero());
                // Lie images stay inside the kernel span.
                for (int axis = 0; axis + 1 < n; ++axis) {
                    auto lie = lie_flat_dir(K, axis);
                    if (lie.is_zero()) continue;
                    auto cmp = subspace_compare(kb.basis, {lie});
                    CHECK(cmp.contained);
                }
                // alpha_j = g(K_j, xi^{p-2j-1}.xi_n) vanishes identically for
                // unit transverse xi.
                auto parts = standard_decompose(K).parts;
                std::vector<std::vector<Rational>> xis;
                xis.push_back(std::vector<Rational>(n, Rational()));
                xis.back()[0] = Rational(1);
                if (n == 3) {
                    xis.push_back(std::vector<Rational>(n, Rational()));
                    xis.back()[1] = Rational(1);
                    xis.push_back({Rational(3, 5), Rational(4, 5), Rational()});
                }
                for (const auto& xi : xis) {
                    for (int j = 0; 2 * j <= p - 1; ++j) {
                        if (j >= static_cast<int>(parts.size())) break;
                        auto probe = e(n, n - 1);
                        for (int k = 0; k < p - 2 * j - 1; ++k)
                            probe = sym_mul(probe, SymTensorField<Rational>::constant_vector(n, xi));
                        CHECK(inner(parts[j], probe).is_zero());
                    }
                }
            }
        }
    }
}

TEST_CASE("d_j pairing identity on random tensors") {
    std::mt19937 rng(163);
    for (auto [n, p] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}, {3, 4}}) {
        for (int trial = 0; trial < 10; ++trial) {
            auto K = kte::random_field<Rational>(rng, n, p, std::vector<int>(n, 1));
            auto parts = standard_decompose(K).parts;
            // Unit vector in the transverse span of xi_1..xi_{n-1}.
            std::vector<Rational> xi(n, Rational());
            if (n == 2) {
                xi[0] = Rational(1);
            } else {
                xi[0] = Rational(3, 5);
                xi[1] = Rational(4, 5);
            }
            // lhs: g(K, xi^{p-1}.xi_n)
            auto probe = e(n, n - 1);
            for (int k = 0; k < p - 1; ++k)
                probe = sym_mul(probe, SymTensorField<Rational>::constant_vector(n, xi));
            auto lhs = inner(K, probe);
            // rhs: sum_j d_j alpha_j over 2j <= p-1
            TorusScalar<Rational> rhs = TorusScalar<Rational>::zero(n);
            for (int j = 0; 2 * j <= p - 1; ++j) {
                auto aprobe = e(n, n - 1);
                for (int k = 0; k < p - 2 * j - 1; ++k)
                    aprobe = sym_mul(aprobe, SymTensorField<Rational>::constant_vector(n, xi));
                rhs = rhs + Rational(dj_factor(p, j)) * inner(parts[j], aprobe);
            }
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("flat kernels contain no nonzero Fourier mode") {
    for (auto [n, p] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 2}}) {
        auto kb = compute_kernel<Rational>(n, p, ConformalFactor::flat(), std::vector<int>(n, 1),
                                           OperatorVariant::killing);
        CHECK(kb.dimension == predicted_dimension(n, p, ConformalFactor::flat()));
        auto cmp = subspace_compare(kb.basis, span_basis<Rational>(n, p, ConformalFactor::flat()));
        CHECK(cmp.equal);
    }
}

TEST_CASE("conformal-Killing flat kernel equals the constant trace-free tensors") {
    for (auto [n, p] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}}) {
        auto kb = compute_kernel<Rational>(n, p, ConformalFactor::flat(), std::vector<int>(n, 1),
                                           OperatorVariant::conformal_killing);
        long long expected = binomial(p + n - 1, n - 1) - binomial(p + n - 3, n - 1);
        CHECK(kb.dimension == expected);
        // Constant harmonic basis from the momentum Laplacian nullspace.
        std::vector<std::vector<Rational>> rows;
        auto monos_p = multi_indices(n, p);
        auto monos_q = multi_indices(n, p - 2);
        std::map<MultiIndex, int> qidx;
        for (std::size_t i = 0; i < monos_q.size(); ++i) qidx[monos_q[i]] = static_cast<int>(i);
        std::vector<ExactRow> lap_rows;
        // Columns are degree-p monomials; rows the Laplacian image.
        std::vector<std::vector<Rational>> lap(monos_q.size(),
                                               std::vector<Rational>(monos_p.size(), Rational()));
        for (std::size_t c = 0; c < monos_p.size(); ++c) {
            auto img = lambda_op(SymTensorField<Rational>::monomial(
                monos_p[c], TorusScalar<Rational>::constant(n, Rational(1))));
            for (const auto& [a, ts] : img.coeffs) lap[qidx[a]][c] = ts.mean();
        }
        auto ech = exact_echelon(rows_from_rational(lap), static_cast<int>(monos_p.size()));
        auto kervecs = exact_kernel_vectors(ech);
        std::vector<SymTensorField<Rational>> harmonic;
        for (const auto& v : kervecs) {
            SymTensorField<Rational> H(n, p);
            for (std::size_t c = 0; c < monos_p.size(); ++c)
                if (!v[c].is_zero())
                    H.add_coeff(monos_p[c], TorusScalar<Rational>::constant(n, v[c]));
            harmonic.push_back(std::move(H));
        }
        REQUIRE(static_cast<long long>(harmonic.size()) == expected);
        auto cmp = subspace_compare(kb.basis, harmonic);
        CHECK(cmp.equal);
    }
}

TEST_CASE("float nullspace agrees with exact elimination and flags conditioning") {
    auto Mq = assemble_operator<Rational>(2, 2, inv21(), {1, 2}, OperatorVariant::killing);
    auto Md = assemble_operator<double>(2, 2, inv21(), {1, 2}, OperatorVariant::killing);
    auto exact = nullspace_exact(Mq);
    auto fl = nullspace_float(Md, 1e-8, Exec::serial);
    CHECK(exact.basis.size() == fl.basis.size());
    CHECK(exact.rank == fl.rank);
    CHECK(fl.warnings.empty());

    // Serial and parallel Jacobi sweeps agree.
    auto fp = nullspace_float(Md, 1e-8, Exec::parallel);
    CHECK(fp.basis.size() == fl.basis.size());
    REQUIRE(fp.singular_values.size() == fl.singular_values.size());
    for (std::size_t i = 0; i < fl.singular_values.size(); ++i)
        CHECK(fl.singular_values[i] ==
              doctest::Approx(fp.singular_values[i]).epsilon(1e-10).scale(1.0));
}

TEST_CASE("float nullspace warns when singular values crowd the threshold") {
    FieldLayout layout(2, 0, {1, 0});  // 3 scalar dimensions
    SparseLinearMap<double> M(layout, layout);
    M.entries = {{0, 0, 1.0}, {1, 1, 2e-8}, {2, 2, 1e-14}};
    auto ns = nullspace_float(M, 1e-8, Exec::serial);
    CHECK(ns.basis.size() == 1);
    CHECK(ns.rank == 2);
    CHECK_FALSE(ns.warnings.empty());
}

TEST_CASE("exact elimination on random sparse rational matrices") {
    std::mt19937 rng(271);
    std::uniform_int_distribution<int> dim(1, 12);
    std::uniform_int_distribution<int> numd(-6, 6);
    std::uniform_int_distribution<int> dend(1, 3);
    std::uniform_real_distribution<double> fill(0.0, 1.0);
    for (int trial = 0; trial < 60; ++trial) {
        const int rows = dim(rng), cols = dim(rng);
        std::vector<std::vector<Rational>> A(rows, std::vector<Rational>(cols, Rational()));
        for (auto& r : A)
            for (auto& v : r)
                if (fill(rng) < 0.4) v = Rational(numd(rng), dend(rng));
        auto ech = exact_echelon(rows_from_rational(A), cols);
        auto kernel = exact_kernel_vectors(ech);
        const int rank = static_cast<int>(ech.pivots.size());

        // rank-nullity, kernel membership and independence.
        CHECK(rank + static_cast<int>(kernel.size()) == cols);
        for (const auto& v : kernel) {
            for (const auto& row : A) {
                Rational dot;
                for (int c = 0; c < cols; ++c) dot += row[c] * v[c];
                CHECK(dot.is_zero());
            }
        }
        if (!kernel.empty()) CHECK(rank_exact(kernel) == static_cast<int>(kernel.size()));

        // Float elimination sees the same rank on these small integers.
        std::vector<std::vector<double>> Ad(rows, std::vector<double>(cols, 0.0));
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) Ad[r][c] = A[r][c].to_double();
        CHECK(rank_float(Ad) == rank);
    }
}

TEST_CASE("theorem verification holds across the inverse_trig parameter family") {
    for (const auto& F : {ConformalFactor::inverse_trig(Rational(3), Rational(2)),
                          ConformalFactor::inverse_trig(Rational(5, 2), Rational(1, 3)),
                          ConformalFactor::inverse_trig(Rational(7, 3), Rational(-1, 2))}) {
        for (auto [n, p] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
            std::vector<int> band(n, 1);
            band[n - 1] = p / 2 + 1;
            auto out = verify_theorem<Rational>(n, p, F, band);
            CHECK(out.report.span_equals);
            CHECK(out.report.kernel_dim == predicted_dimension(n, p, F));
            CHECK(out.report.parity_ok);
            CHECK(out.report.flatness_ok);
            CHECK(out.report.band_stable);
        }
    }
}

TEST_CASE("the comparison rejects the span of a different metric") {
    auto kb = compute_kernel<Rational>(2, 2, inv21(), {1, 2}, OperatorVariant::killing);
    auto wrong = span_basis<Rational>(
        2, 2, ConformalFactor::inverse_trig(Rational(3), Rational(1)));
    auto cmp = subspace_compare(kb.basis, wrong);
    CHECK_FALSE(cmp.contained);
    CHECK_FALSE(cmp.equal);
}
