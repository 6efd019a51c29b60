#include "doctest.h"
#include "oracles.hpp"
#include "oscdict/finite_field.hpp"

using namespace oscdict;

TEST_CASE("legendre matches enumerated squares") {
    CHECK(legendre(FpElem(1, 7)) == 1);
    CHECK(legendre(FpElem(0, 7)) == 0);
    CHECK(legendre(FpElem(3, 7)) == -1);

    for (std::uint64_t p : {5, 7, 11, 13}) {
        const auto sq = oracle::squares(p);
        int plus = 0, minus = 0;
        for (std::uint64_t a = 1; a < p; ++a) {
            const int l = legendre(FpElem(static_cast<std::int64_t>(a), p));
            CHECK(l == (sq.count(a) ? 1 : -1));
            (l == 1 ? plus : minus) += 1;
            // reduction mod p and multiplicativity
            CHECK(legendre(FpElem(static_cast<std::int64_t>(a + 3 * p), p)) == l);
            for (std::uint64_t b = 1; b < p; ++b) {
                const FpElem fa(static_cast<std::int64_t>(a), p), fb(static_cast<std::int64_t>(b), p);
                CHECK(legendre(fa * fb) == legendre(fa) * legendre(fb));
            }
        }
        CHECK(plus == static_cast<int>((p - 1) / 2));
        CHECK(minus == static_cast<int>((p - 1) / 2));
    }
}

TEST_CASE("FpElem arithmetic closes in [0, p)") {
    const std::uint64_t p = 13;
    for (std::int64_t a = -20; a < 20; ++a) {
        const FpElem fa(a, p);
        CHECK(fa.value() < p);
        if (!fa.is_zero()) CHECK((fa * fa.inverse()).value() == 1);
        CHECK((fa + (-fa)).is_zero());
    }
    CHECK_THROWS_AS(FpElem(0, p).inverse(), std::domain_error);
    CHECK_THROWS_AS(FpElem(1, 5) + FpElem(1, 7), std::invalid_argument);
}

TEST_CASE("canonical non-square, primitive root, sqrt(-1)") {
    CHECK(find_nonsquare(5).value() == 2);
    CHECK(find_nonsquare(7).value() == 3);
    CHECK(find_nonsquare(11).value() == 2);

    CHECK(primitive_root(5).value() == 2);
    CHECK(primitive_root(7).value() == 3);
    CHECK(primitive_root(11).value() == 2);

    CHECK(sqrt_minus_one(5).value() == 2);
    CHECK(sqrt_minus_one(13).value() == 5);
    CHECK_THROWS_AS(sqrt_minus_one(7), std::domain_error);

    CHECK_THROWS_AS(find_nonsquare(9), std::invalid_argument);
    CHECK_THROWS_AS(find_nonsquare(3), std::invalid_argument);
}

TEST_CASE("primitive root has full order") {
    for (std::uint64_t p : {5, 7, 11, 13, 17, 19, 23, 101}) {
        const auto g = primitive_root(p).value();
        std::uint64_t x = g, order = 1;
        while (x != 1) {
            x = x * g % p;
            ++order;
        }
        CHECK(order == p - 1);
    }
}

TEST_CASE("fp2_pow basics") {
    const std::uint64_t p = 7;
    const FpElem D(3, p);
    const Fp2Elem e(FpElem(2, p), FpElem(5, p), D);
    CHECK(fp2_pow(e, 0).is_one());
    const Fp2Elem root_D(FpElem(0, p), FpElem(1, p), D);
    CHECK(fp2_pow(root_D, 2) == Fp2Elem(D, FpElem(0, p), D));
    for (std::uint64_t s = 0; s < p; ++s) {
        for (std::uint64_t t = 0; t < p; ++t) {
            if (s == 0 && t == 0) continue;
            const Fp2Elem x(FpElem(static_cast<std::int64_t>(s), p), FpElem(static_cast<std::int64_t>(t), p), D);
            CHECK(fp2_pow(x, p * p - 1).is_one());
        }
    }
}

TEST_CASE("F_{p^2} is a field at p = 5") {
    const std::uint64_t p = 5;
    const FpElem D(2, p);
    std::vector<Fp2Elem> elems;
    for (std::int64_t x = 0; x < 5; ++x)
        for (std::int64_t y = 0; y < 5; ++y) elems.emplace_back(FpElem(x, p), FpElem(y, p), D);
    const auto one = Fp2Elem::one(D);
    for (const auto& a : elems) {
        CHECK(a * one == a);
        if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
        for (const auto& b : elems) {
            CHECK(a * b == b * a);
            for (const auto& c : elems) CHECK((a * b) * c == a * (b * c));
        }
    }
}

TEST_CASE("find_primitive_fp2 agrees with an exhaustive order scan") {
    for (auto [p, D] : {std::pair<std::uint64_t, std::uint64_t>{5, 2}, {7, 3}, {11, 2}, {13, 2}}) {
        // first (s, t) in scan order with full order
        std::pair<std::uint64_t, std::uint64_t> want{0, 0};
        bool found = false;
        for (std::uint64_t t = 1; t < p && !found; ++t)
            for (std::uint64_t s = 0; s < p && !found; ++s)
                if (oracle::fp2_order(s, t, D, p) == p * p - 1) {
                    want = {s, t};
                    found = true;
                }
        const auto [s, t] = find_primitive_fp2(p, FpElem(static_cast<std::int64_t>(D), p));
        CHECK(s.value() == want.first);
        CHECK(t.value() == want.second);
        CHECK(t.value() != 0);
    }
    // frozen from the scan above
    const auto [s5, t5] = find_primitive_fp2(5, FpElem(2, 5));
    CHECK(s5.value() == 2);
    CHECK(t5.value() == 1);
    CHECK_THROWS_AS(find_primitive_fp2(5, FpElem(4, 5)), std::invalid_argument);
}

TEST_CASE("primitive element generates all of F_{p^2}^*") {
    for (std::uint64_t p : {5, 7}) {
        const FpElem D = find_nonsquare(p);
        const auto [s, t] = find_primitive_fp2(p, D);
        const Fp2Elem g(s, t, D);
        std::set<std::pair<Residue, Residue>> seen;
        Fp2Elem x = Fp2Elem::one(D);
        for (std::uint64_t k = 0; k < p * p - 1; ++k) {
            seen.insert({x.x().value(), x.y().value()});
            x = x * g;
        }
        CHECK(seen.size() == p * p - 1);
        for (auto q : prime_factors(p * p - 1)) CHECK_FALSE(fp2_pow(g, (p * p - 1) / q).is_one());
    }
}

TEST_CASE("prime helpers") {
    CHECK(is_prime(2));
    CHECK(is_prime(197));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
    CHECK(prime_factors(24) == std::vector<std::uint64_t>{2, 3});
    CHECK(prime_factors(168) == std::vector<std::uint64_t>{2, 3, 7});
}
