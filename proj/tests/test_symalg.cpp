#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace kt;
namespace kte = kt::testing;

namespace {
SymTensorField<Rational> e(int n, int i) { return SymTensorField<Rational>::basis_vector(n, i); }

SymTensorField<Rational> L_field(int n) {
    return l_mul(SymTensorField<Rational>::scalar(n, TorusScalar<Rational>::constant(n, Rational(1))));
}

TorusScalar<Rational> constant(int n, Rational v) { return TorusScalar<Rational>::constant(n, v); }
}  // namespace

TEST_CASE("sym_mul on basis vectors gives momentum monomials") {
    auto e1 = e(2, 0);
    auto prod = sym_mul(e1, e1);
    CHECK(prod.p == 2);
    REQUIRE(prod.coeffs.size() == 1);
    CHECK(prod.coeffs.begin()->first == MultiIndex({2, 0}));
    CHECK(prod.coeffs.begin()->second == constant(2, Rational(1)));
}

TEST_CASE("sum of squares of the frame is |y|^2 = N_L") {
    for (int n = 2; n <= 3; ++n) {
        SymTensorField<Rational> sum(n, 2);
        for (int i = 0; i < n; ++i) sum = sum + sym_mul(e(n, i), e(n, i));
        CHECK(sum == L_field(n));
    }
}

TEST_CASE("g(v.v, w.w) = 2 g(v,w)^2 for random vectors") {
    std::mt19937 rng(31);
    for (int i = 0; i < 100; ++i) {
        auto v = kte::random_vector<Rational>(rng, 3);
        auto w = kte::random_vector<Rational>(rng, 3);
        auto vv = sym_mul(SymTensorField<Rational>::constant_vector(3, v),
                          SymTensorField<Rational>::constant_vector(3, v));
        auto ww = sym_mul(SymTensorField<Rational>::constant_vector(3, w),
                          SymTensorField<Rational>::constant_vector(3, w));
        Rational dot;
        for (int k = 0; k < 3; ++k) dot += v[k] * w[k];
        CHECK(inner(vv, ww) == constant(3, Rational(2) * dot * dot));
    }
}

TEST_CASE("inner matches the permanent oracle on decomposable tensors") {
    std::mt19937 rng(37);
    for (int p = 1; p <= 4; ++p) {
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<std::vector<Rational>> vs, ws;
            for (int i = 0; i < p; ++i) {
                vs.push_back(kte::random_vector<Rational>(rng, 3));
                ws.push_back(kte::random_vector<Rational>(rng, 3));
            }
            auto A = kte::decomposable(vs, 3);
            auto B = kte::decomposable(ws, 3);
            CHECK(inner(A, B) == constant(3, kte::permanent_inner(vs, ws)));
        }
    }
}

TEST_CASE("inner unit values") {
    CHECK(inner(e(2, 0), e(2, 0)) == constant(2, Rational(1)));
    auto e11 = sym_mul(e(2, 0), e(2, 0));
    auto e12 = sym_mul(e(2, 0), e(2, 1));
    CHECK(inner(e11, e11) == constant(2, Rational(2)));
    CHECK(inner(e12, e12) == constant(2, Rational(1)));
    CHECK_THROWS_AS(inner(e11, e(2, 0)), std::invalid_argument);
}

TEST_CASE("contraction is the momentum directional derivative") {
    auto e11 = sym_mul(e(2, 0), e(2, 0));
    std::vector<Rational> e1{Rational(1), Rational(0)};
    std::vector<Rational> e2{Rational(0), Rational(1)};
    CHECK(contract(e1, e11) == Rational(2) * e(2, 0));
    CHECK(contract(e2, e11).is_zero());
    CHECK(contract(e1, SymTensorField<Rational>::scalar(2, constant(2, Rational(5)))).is_zero());
}

TEST_CASE("contraction is metric-adjoint to vector multiplication") {
    std::mt19937 rng(41);
    std::vector<int> band{1, 2};
    for (int p = 0; p <= 3; ++p) {
        for (int trial = 0; trial < 30; ++trial) {
            auto v = kte::random_vector<Rational>(rng, 2);
            auto A = kte::random_field<Rational>(rng, 2, p, band);
            auto B = kte::random_field<Rational>(rng, 2, p + 1, band);
            auto vA = sym_mul(SymTensorField<Rational>::constant_vector(2, v), A);
            CHECK(inner(vA, B) == inner(A, contract(v, B)));
        }
    }
}

TEST_CASE("l_mul multiplies the polynomial by |y|^2 and satisfies the power formula") {
    CHECK(l_mul(SymTensorField<Rational>::scalar(2, constant(2, Rational(1)))) == L_field(2));

    // Form-value check (L.K)(v,...,v) = (q+2)(q+1) K(v,..,v) |v|^2 through the
    // p! normalization of eval.
    std::mt19937 rng(43);
    for (int q = 0; q <= 4; ++q) {
        for (int trial = 0; trial < 25; ++trial) {
            auto K = kte::random_field<Rational>(rng, 2, q, {1, 1});
            auto v = kte::random_vector<Rational>(rng, 2);
            Rational v2 = v[0] * v[0] + v[1] * v[1];
            auto lhs = Rational(factorial(q + 2)) * eval_momentum(l_mul(K), v);
            auto rhs = Rational((q + 2) * (q + 1) * factorial(q)) * v2 * eval_momentum(K, v);
            CHECK(lhs == rhs);
        }
    }

    // q = 1 hand value: (L.e1)(e1,e1,e1) = 6.
    auto le1 = l_mul(e(2, 0));
    std::vector<Rational> ve1{Rational(1), Rational(0)};
    CHECK(Rational(factorial(3)) * eval_momentum(le1, ve1) == constant(2, Rational(6)));
}

TEST_CASE("lambda_op is the momentum Laplacian") {
    for (int n = 2; n <= 3; ++n) {
        auto LL = lambda_op(L_field(n));
        CHECK(LL == SymTensorField<Rational>::scalar(n, constant(n, Rational(2 * n))));
    }
    CHECK(lambda_op(sym_mul(e(2, 0), e(2, 1))).is_zero());
    CHECK(lambda_op(e(2, 0)).is_zero());
}

TEST_CASE("commutator identities hold exactly on random tensors") {
    std::mt19937 rng(47);
    std::vector<int> band{1, 2};
    for (int p = 0; p <= 4; ++p) {
        for (int trial = 0; trial < 25; ++trial) {
            auto K = kte::random_field<Rational>(rng, 2, p, band);
            auto v = kte::random_vector<Rational>(rng, 2);
            auto vK = sym_mul(SymTensorField<Rational>::constant_vector(2, v), K);

            // [Lambda, v.] = 2 v -|
            auto lhs1 = lambda_op(vK) - sym_mul(SymTensorField<Rational>::constant_vector(2, v),
                                                lambda_op(K));
            CHECK(lhs1 == Rational(2) * contract(v, K));

            // [v -|, L.] = 2 v.
            auto lhs2 = contract(v, l_mul(K)) - l_mul(contract(v, K));
            CHECK(lhs2 == Rational(2) * vK);

            // [Lambda, v -|] = 0
            CHECK(lambda_op(contract(v, K)) == contract(v, lambda_op(K)));

            // [L., v.] = 0
            CHECK(l_mul(vK) == sym_mul(SymTensorField<Rational>::constant_vector(2, v), l_mul(K)));
        }
    }
}

TEST_CASE("adjointness of L and Lambda under the scalar product") {
    std::mt19937 rng(53);
    std::vector<int> band{1, 1};
    for (int p = 0; p <= 3; ++p) {
        for (int trial = 0; trial < 30; ++trial) {
            auto A = kte::random_field<Rational>(rng, 2, p, band);
            auto B = kte::random_field<Rational>(rng, 2, p + 2, band);
            CHECK(inner(l_mul(A), B) == inner(A, lambda_op(B)));
        }
    }
}

TEST_CASE("standard decomposition: known cases") {
    SUBCASE("K = L") {
        auto D = standard_decompose(L_field(2));
        REQUIRE(D.parts.size() == 2);
        CHECK(D.parts[0].is_zero());
        CHECK(D.parts[1] == SymTensorField<Rational>::scalar(2, constant(2, Rational(1))));
    }
    SUBCASE("K = e1.e1 in n = 2") {
        auto e11 = sym_mul(e(2, 0), e(2, 0));
        auto D = standard_decompose(e11);
        REQUIRE(D.parts.size() == 2);
        CHECK(D.parts[1] == SymTensorField<Rational>::scalar(2, constant(2, Rational(1, 2))));
        CHECK(D.parts[0] == e11 - Rational(1, 2) * L_field(2));
        CHECK(lambda_op(D.parts[0]).is_zero());
    }
}

TEST_CASE("standard decomposition reconstructs and is idempotent on random tensors") {
    std::mt19937 rng(59);
    std::vector<int> band{1, 2};
    for (int n = 2; n <= 3; ++n) {
        for (int p = 0; p <= 5; ++p) {
            for (int trial = 0; trial < 10; ++trial) {
                auto K = kte::random_field<Rational>(rng, n, p, std::vector<int>(n, 1));
                auto D = standard_decompose(K);
                CHECK(D.reconstruct() == K);
                for (const auto& part : D.parts) CHECK(lambda_op(part).is_zero());
                // Idempotence: each part is its own harmonic part.
                for (std::size_t j = 0; j < D.parts.size(); ++j) {
                    auto DD = standard_decompose(D.parts[j]);
                    CHECK(DD.parts[0] == D.parts[j]);
                }
            }
        }
    }
}

TEST_CASE("trace-free projection of vector multiplication") {
    SUBCASE("(e1.e1)_0 via v = e1, K = e1") {
        std::vector<Rational> v{Rational(1), Rational(0)};
        auto r = tf_part_of_vector_mul(v, e(2, 0));
        auto expect = sym_mul(e(2, 0), e(2, 0)) - Rational(1, 2) * L_field(2);
        CHECK(r == expect);
        CHECK(lambda_op(r).is_zero());
    }
    SUBCASE("orthogonal vector with zero contraction passes through") {
        std::vector<Rational> v{Rational(0), Rational(1)};
        auto K = e(2, 0);  // v -| K = 0
        auto r = tf_part_of_vector_mul(v, K);
        CHECK(r == sym_mul(SymTensorField<Rational>::constant_vector(2, v), K));
    }
    SUBCASE("result is Lambda-null for random trace-free inputs") {
        std::mt19937 rng(61);
        for (int p = 1; p <= 3; ++p) {
            for (int trial = 0; trial < 20; ++trial) {
                auto K = kte::random_trace_free<Rational>(rng, 3, p, {1, 1, 1});
                auto v = kte::random_vector<Rational>(rng, 3);
                CHECK(lambda_op(tf_part_of_vector_mul(v, K)).is_zero());
            }
        }
    }
    SUBCASE("non-trace-free input is rejected") {
        std::vector<Rational> v{Rational(1), Rational(0)};
        CHECK_THROWS_AS(tf_part_of_vector_mul(v, L_field(2)), std::invalid_argument);
    }
}

TEST_CASE("eval and the multilinear form normalization") {
    auto e11 = sym_mul(e(2, 0), e(2, 0));
    std::vector<double> x{0.0, 0.0};
    CHECK(eval(e11, x, {1.0, 0.0}) == doctest::Approx(1.0));
    // Form value K(e1, e1) = p! * eval = 2.
    CHECK(2.0 * eval(e11, x, {1.0, 0.0}) == doctest::Approx(2.0));
    std::vector<double> v{0.3, -1.2};
    CHECK(eval(L_field(2), x, v) == doctest::Approx(v[0] * v[0] + v[1] * v[1]));
}

TEST_CASE("eval is multiplicative over sym_mul") {
    std::mt19937 rng(67);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    std::vector<int> band{1, 1};
    for (int trial = 0; trial < 40; ++trial) {
        auto A = kte::random_field<Rational>(rng, 2, 2, band);
        auto B = kte::random_field<Rational>(rng, 2, 1, band);
        std::vector<double> x{ud(rng) * 3, ud(rng) * 3};
        std::vector<double> y{ud(rng), ud(rng)};
        CHECK(eval(sym_mul(A, B), x, y) ==
              doctest::Approx(eval(A, x, y) * eval(B, x, y)).epsilon(1e-12));
    }
}

TEST_CASE("sym_mul is associative and commutative on random triples") {
    std::mt19937 rng(71);
    std::vector<int> band{1, 1};
    for (int trial = 0; trial < 30; ++trial) {
        auto A = kte::random_field<Rational>(rng, 2, 1, band);
        auto B = kte::random_field<Rational>(rng, 2, 2, band);
        auto C = kte::random_field<Rational>(rng, 2, 1, band);
        CHECK(sym_mul(A, B) == sym_mul(B, A));
        CHECK(sym_mul(sym_mul(A, B), C) == sym_mul(A, sym_mul(B, C)));
    }
    auto A = kte::random_field<Rational>(rng, 2, 1, band);
    auto B3 = kte::random_field<Rational>(rng, 3, 1, {1, 1, 1});
    CHECK_THROWS_AS(sym_mul(A, B3), std::invalid_argument);
}

TEST_CASE("float mode identities hold to 1e-12 relative") {
    std::mt19937 rng(73);
    std::vector<int> band{1, 1};
    for (int trial = 0; trial < 30; ++trial) {
        auto K = kte::random_field<double>(rng, 2, 3, band);
        auto v = kte::random_vector<double>(rng, 2);
        auto vK = sym_mul(SymTensorField<double>::constant_vector(2, v), K);
        auto lhs = lambda_op(vK) - sym_mul(SymTensorField<double>::constant_vector(2, v), lambda_op(K));
        auto rhs = 2.0 * contract(v, K);
        double scale = std::max(1.0, rhs.max_abs());
        CHECK(kte::field_max_abs_diff(lhs, rhs) / scale < 1e-12);
        auto D = standard_decompose(K);
        CHECK(kte::field_max_abs_diff(D.reconstruct(), K) / std::max(1.0, K.max_abs()) < 1e-12);
    }
}

TEST_CASE("trace-free projection of a scalar multiplies through without the L term") {
    std::vector<Rational> v{Rational(2), Rational(-3)};
    auto K = SymTensorField<Rational>::scalar(2, TorusScalar<Rational>::cosine(2, {0, 1}));
    auto r = tf_part_of_vector_mul(v, K);
    CHECK(r == sym_mul(SymTensorField<Rational>::constant_vector(2, v), K));
    CHECK(lambda_op(r).is_zero());
}
