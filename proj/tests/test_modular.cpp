#include <doctest.h>

#include <random>

#include "circlewalk/errors.hpp"
#include "circlewalk/modular.hpp"
#include "oracles.hpp"

using namespace circlewalk;

TEST_CASE("make_modulus accepts primes 3 mod 4") {
    const auto m = make_modulus(7);
    CHECK(m.value() == 7);
    // squares mod 7 by enumeration: {1, 2, 4}
    const auto squares = oracle::nonzero_squares(7);
    CHECK(squares == std::set<std::uint32_t>{1, 2, 4});
    for (std::uint32_t a = 1; a < 7; ++a) {
        CHECK((m.classify(a) == Residue::square) == (squares.count(a) == 1));
    }
    CHECK(m.classify(0) == Residue::zero);

    // 4003 is prime by trial division and 4003 = 4 * 1000 + 3.
    CHECK(make_modulus(4003).value() == 4003);
    CHECK(make_modulus(3).value() == 3);
}

TEST_CASE("make_modulus rejections") {
    CHECK_THROWS_AS(make_modulus(13), WrongResidueClass);
    CHECK_THROWS_AS(make_modulus(5), WrongResidueClass);
    CHECK_THROWS_AS(make_modulus(2), WrongResidueClass);
    CHECK_THROWS_AS(make_modulus(15), NotPrime);   // 15 = 3 mod 4 but composite
    CHECK_THROWS_AS(make_modulus(4087), NotPrime);  // 61 * 67
    CHECK_THROWS_AS(make_modulus(1), NotPrime);
    CHECK_THROWS_AS(make_modulus(-7), NotPrime);
}

TEST_CASE("is_prime agrees with a sieve") {
    const auto primes = oracle::primes_3_mod_4(3, 5000);
    std::set<std::int64_t> expected(primes.begin(), primes.end());
    for (std::int64_t n = 3; n <= 5000; n += 4) {
        CHECK(is_prime(n) == (expected.count(n) == 1));
    }
}

TEST_CASE("is_square examples") {
    const auto m = make_modulus(7);
    CHECK(is_square(Fp(m, 2)) == Residue::square);  // 3^2 = 9 = 2
    CHECK(is_square(Fp(m, 6)) == Residue::nonsquare);  // -1
    CHECK(is_square(Fp(m, 0)) == Residue::zero);
    CHECK(is_square(Fp(m, -1)) == Residue::nonsquare);
}

TEST_CASE("sqrt_mod examples") {
    const auto m = make_modulus(7);
    CHECK(sqrt_mod(Fp(m, 2)).value() == 3);  // 2^2 = 4, min(4, 3) = 3
    CHECK(sqrt_mod(Fp(m, 1)).value() == 1);
    CHECK(sqrt_mod(Fp(m, 0)).value() == 0);
    CHECK_THROWS_AS(sqrt_mod(Fp(m, 3)), NotASquare);
    const auto big = make_modulus(4003);
    CHECK(sqrt_mod(Fp(big, 1)).value() == 1);
}

TEST_CASE("inv_mod examples") {
    const auto m = make_modulus(7);
    CHECK(inv_mod(Fp(m, 2)).value() == 4);
    CHECK(inv_mod(Fp(m, 1)).value() == 1);
    CHECK(inv_mod(Fp(m, 4)).value() == 2);
    CHECK_THROWS_AS(inv_mod(Fp(m, 0)), DivisionByZero);
    CHECK_THROWS_AS(inv_mod(Fp(m, 14)), DivisionByZero);
}

TEST_CASE("field properties over random primes") {
    std::mt19937 rng(20240601);
    const auto primes = oracle::primes_3_mod_4(3, 3000);
    for (int round = 0; round < 25; ++round) {
        const auto p = primes[rng() % primes.size()];
        const auto m = make_modulus(p);
        CAPTURE(p);

        std::uint32_t squares = 0;
        for (std::uint32_t a = 1; a < m.value(); ++a) {
            if (m.classify(a) == Residue::square) ++squares;
        }
        CHECK(squares == (m.value() - 1) / 2);
        CHECK(squares == m.square_count());
        CHECK(m.classify(m.value() - 1) == Residue::nonsquare);

        for (int trial = 0; trial < 200; ++trial) {
            const Fp a(m, static_cast<std::int64_t>(rng() % m.value()));
            const auto cls = is_square(a * a);
            CHECK((cls == Residue::zero || cls == Residue::square));
            if (a.value() == 0) continue;
            CHECK(inv_mod(inv_mod(a)) == a);
            CHECK((a * inv_mod(a)).value() == 1);
            if (is_square(a) == Residue::square) {
                const auto r = sqrt_mod(a);
                CHECK(r * r == a);
                CHECK(r.value() <= (m.value() - 1) / 2);
            } else {
                CHECK_THROWS_AS(sqrt_mod(a), NotASquare);
            }
        }
    }
}
