#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ktori/rational.hpp"

using kt::BigInt;
using kt::Rational;

TEST_CASE("bigint arithmetic agrees with int64 on random inputs") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> d(-1000000000ll, 1000000000ll);
    for (int i = 0; i < 20000; ++i) {
        long long a = d(rng), b = d(rng);
        CHECK(BigInt(a) + BigInt(b) == BigInt(a + b));
        CHECK(BigInt(a) - BigInt(b) == BigInt(a - b));
        CHECK(BigInt(a) * BigInt(b) == BigInt(a * b));
        if (b != 0) {
            BigInt q, r;
            BigInt::divmod(BigInt(a), BigInt(b), q, r);
            CHECK(q == BigInt(a / b));
            CHECK(r == BigInt(a % b));
        }
    }
}

TEST_CASE("bigint multi-limb division satisfies a = qb + r with |r| < |b|") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> d(-1000000000000000000ll, 1000000000000000000ll);
    for (int i = 0; i < 5000; ++i) {
        BigInt a = BigInt(d(rng)) * BigInt(d(rng)) * BigInt(d(rng));
        BigInt b = BigInt(d(rng)) * BigInt(d(rng));
        if (b.is_zero()) continue;
        BigInt q, r;
        BigInt::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(BigInt::cmp_abs(r, b) < 0);
        if (!r.is_zero()) CHECK(r.sign() == a.sign());
    }
}

TEST_CASE("bigint decimal round trip") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long long> d(-1000000000000000000ll, 1000000000000000000ll);
    for (int i = 0; i < 300; ++i) {
        BigInt a = BigInt(d(rng)) * BigInt(d(rng)) * BigInt(d(rng)) * BigInt(d(rng));
        CHECK(BigInt::from_string(a.to_string()) == a);
    }
    CHECK(BigInt(0).to_string() == "0");
    CHECK(BigInt(-1).to_string() == "-1");
}

TEST_CASE("bigint gcd") {
    CHECK(BigInt::gcd(BigInt(12), BigInt(18)) == BigInt(6));
    CHECK(BigInt::gcd(BigInt(-12), BigInt(18)) == BigInt(6));
    CHECK(BigInt::gcd(BigInt(0), BigInt(5)) == BigInt(5));
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long long> d(1, 1000000000ll);
    for (int i = 0; i < 2000; ++i) {
        long long a = d(rng), b = d(rng);
        long long g = std::gcd(a, b);
        CHECK(BigInt::gcd(BigInt(a), BigInt(b)) == BigInt(g));
    }
}

TEST_CASE("rational field axioms on random triples") {
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<long long> num(-50, 50);
    std::uniform_int_distribution<long long> den(1, 20);
    auto rnd = [&] { return Rational(num(rng), den(rng)); };
    for (int i = 0; i < 2000; ++i) {
        Rational a = rnd(), b = rnd(), c = rnd();
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) + c == a + (b + c));
        if (!b.is_zero()) CHECK(a / b * b == a);
    }
}

TEST_CASE("rational parsing handles p/q and exact decimals") {
    CHECK(Rational::from_string("3/4") == Rational(3, 4));
    CHECK(Rational::from_string("-7/2") == Rational(-7, 2));
    CHECK(Rational::from_string("2.5") == Rational(5, 2));
    CHECK(Rational::from_string("-0.125") == Rational(-1, 8));
    CHECK(Rational::from_string("42") == Rational(42));
    CHECK(Rational::from_string("2.5").to_string() == "5/2");
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("rational normalization is canonical") {
    CHECK(Rational(2, 4).to_string() == "1/2");
    CHECK(Rational(-2, -4).to_string() == "1/2");
    CHECK(Rational(2, -4).to_string() == "-1/2");
    CHECK(Rational(0, 7).to_string() == "0");
}
