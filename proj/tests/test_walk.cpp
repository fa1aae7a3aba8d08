#include <doctest.h>

#include <cmath>

#include "circlewalk/errors.hpp"
#include "circlewalk/walk.hpp"
#include "oracles.hpp"

using namespace circlewalk;

namespace {

StochasticKernel walk_kernel(std::int64_t p, std::uint32_t m = 1) {
    return build_kernel(StructureTensor(make_modulus(p)), m);
}

}  // namespace

TEST_CASE("build_kernel examples") {
    const auto K = walk_kernel(7);
    CHECK(K.states() == 7);
    for (std::uint32_t j = 0; j < 7; ++j) CHECK(K.exact(0, j) == (j == 1 ? 1 : 0));
    CHECK(K.exact(1, 0) == make_rational(1, 8));
    CHECK(K.exact(1, 2) == make_rational(1, 4));
    CHECK_THROWS_AS(build_kernel(StructureTensor(make_modulus(7)), 0), ZeroGenerator);
    CHECK_THROWS_AS(build_kernel(StructureTensor(make_modulus(7)), 7), IndexOutOfRange);
}

TEST_CASE("kernel entries match plane step counting") {
    for (const auto p : {7, 11, 19}) {
        const auto K = walk_kernel(p);
        const auto oracle_K = oracle::kernel_by_counting(p);
        for (std::uint32_t i = 0; i < K.states(); ++i)
            for (std::uint32_t j = 0; j < K.states(); ++j) CHECK(K(i, j) == doctest::Approx(oracle_K[i][j]).epsilon(1e-14));
    }
}

TEST_CASE("kernel value set outside row and column 0") {
    const auto K = walk_kernel(23);
    const auto a = make_rational(1, 24), b = make_rational(2, 24);
    for (std::uint32_t i = 1; i < 23; ++i)
        for (std::uint32_t j = 1; j < 23; ++j) {
            const auto v = K.exact(i, j);
            CHECK((v == 0 || v == a || v == b));
        }
}

TEST_CASE("StochasticKernel rejects bad rows") {
    CHECK_THROWS_AS(StochasticKernel(2, {1, 1, 2, 0}, 3), NotStochastic);
    CHECK_THROWS_AS(StochasticKernel(2, {3, -1, 2, 0}, 2), NotStochastic);
    CHECK_NOTHROW(StochasticKernel(2, {1, 1, 2, 0}, 2));
}

TEST_CASE("stationary examples") {
    const auto pi7 = stationary(make_modulus(7));
    REQUIRE(pi7.is_exact());
    std::vector<Rational> expected{make_rational(1, 49)};
    for (int j = 1; j < 7; ++j) expected.emplace_back(8, 49);
    CHECK(pi7.exact_weights() == expected);

    const auto pi11 = stationary(make_modulus(11));
    CHECK(pi11.exact_weights()[0] == make_rational(1, 121));
    CHECK(pi11.exact_weights()[5] == make_rational(12, 121));

    const auto pi43 = stationary(make_modulus(43));
    Rational total(0);
    for (const auto& w : pi43.exact_weights()) total += w;
    CHECK(total == 1);
}

TEST_CASE("pi K = pi exactly for every generator") {
    for (const auto p : {7, 11, 19}) {
        const auto m = make_modulus(p);
        const StructureTensor t(m);
        const auto pi = stationary(m);
        for (std::uint32_t g = 1; g < m.value(); ++g) {
            const auto next = step_exact(build_kernel(t, g), pi);
            CHECK(next.exact_weights() == pi.exact_weights());
        }
    }
}

TEST_CASE("detailed balance") {
    const auto m = make_modulus(7);
    const auto K = walk_kernel(7);
    CHECK(detailed_balance(K, stationary(m)).holds);

    const auto uniform = detailed_balance(K, Distribution::uniform(7));
    CHECK_FALSE(uniform.holds);
    REQUIRE(uniform.witness);
    CHECK(uniform.witness->first == 0);

    CHECK_FALSE(detailed_balance(K, Distribution::point_mass(7, 0)).holds);
    CHECK(detailed_balance(identity_kernel(7), Distribution::point_mass(7, 0)).holds);
}

TEST_CASE("Distribution validation") {
    CHECK_THROWS_AS(Distribution::exact({make_rational(1, 2), make_rational(1, 3)}), InvalidDistribution);
    CHECK_THROWS_AS(Distribution::exact({make_rational(3, 2), make_rational(-1, 2)}), InvalidDistribution);
    CHECK_THROWS_AS(Distribution::approximate({0.5, 0.4}), InvalidDistribution);
    CHECK_NOTHROW(Distribution::approximate({0.5, 0.5 + 1e-14}));
    CHECK_THROWS_AS(Distribution::approximate({0.5, 0.4}).exact_weights(), InvalidDistribution);
}

TEST_CASE("tv_distance examples") {
    const auto pi = stationary(make_modulus(7));
    const auto d0 = Distribution::point_mass(7, 0);
    CHECK(tv_distance(pi, pi) == 0.0);
    CHECK(tv_distance(d0, pi) == doctest::Approx(48.0 / 49.0).epsilon(1e-15));
    CHECK(tv_distance_exact(d0, pi) == make_rational(48, 49));
    CHECK(tv_distance(d0, Distribution::point_mass(7, 1)) == 1.0);
    CHECK_THROWS_AS(tv_distance(d0, Distribution::point_mass(6, 0)), LengthMismatch);
}

TEST_CASE("iterate examples") {
    const auto m = make_modulus(7);
    const auto K = walk_kernel(7);
    const auto pi = stationary(m);
    const auto d0 = Distribution::point_mass(7, 0);

    CHECK(iterate(K, d0, 0).values() == d0.values());
    CHECK(iterate(K, d0, 1).values() == Distribution::point_mass(7, 1).values());
    for (const std::uint64_t t : {1, 5, 50}) CHECK(tv_distance(iterate(K, pi, t), pi) < 1e-12);
    for (std::uint32_t i = 0; i < 7; ++i)
        CHECK(tv_distance(iterate(K, Distribution::point_mass(7, i), 400), pi) < 1e-9);
}

TEST_CASE("mixing_time agrees with per-start iteration") {
    for (const auto p : {7, 11, 19, 23, 31}) {
        const auto m = make_modulus(p);
        const auto K = walk_kernel(p);
        const auto pi = stationary(m);
        const auto report = mixing_time(K, pi);
        const auto expected = oracle::mixing_time_per_start(oracle::kernel_by_counting(p),
                                                            oracle::stationary_doubles(p), kDefaultEpsilon);
        CAPTURE(p);
        CHECK(report.tau == expected);

        REQUIRE(report.tv_curve.size() == report.tau + 1);
        for (std::size_t t = 1; t < report.tv_curve.size(); ++t)
            CHECK(report.tv_curve[t] <= report.tv_curve[t - 1]);
        CHECK(report.tv_curve[report.tau] <= kDefaultEpsilon);
        if (report.tau > 0) CHECK(report.tv_curve[report.tau - 1] > kDefaultEpsilon);

        const auto worst = oracle::tv_curve_from(report.worst_start, oracle::kernel_by_counting(p),
                                                 oracle::stationary_doubles(p), report.tau);
        CHECK(worst[report.tau - 1] > kDefaultEpsilon);
    }
}

TEST_CASE("mixing_time edge cases") {
    const auto m = make_modulus(7);
    const auto K = walk_kernel(7);
    const auto pi = stationary(m);

    MixingOptions loose;
    loose.epsilon = 1.0;
    CHECK(mixing_time(K, pi, loose).tau == 0);

    MixingOptions bad;
    bad.epsilon = 0.0;
    CHECK_THROWS_AS(mixing_time(K, pi, bad), BadEpsilon);

    MixingOptions short_budget;
    short_budget.max_steps = 1;
    try {
        mixing_time(K, pi, short_budget);
        FAIL("expected NotMixed");
    } catch (const NotMixed& e) {
        CHECK(e.curve().size() == 2);
    }

    MixingOptions one_start;
    one_start.starts = {3};
    const auto r = mixing_time(K, pi, one_start);
    const auto oracle_curve =
        oracle::tv_curve_from(3, oracle::kernel_by_counting(7), oracle::stationary_doubles(7), r.tau);
    CHECK(oracle_curve[r.tau] <= kDefaultEpsilon);
    CHECK(r.worst_start == 3);
}

TEST_CASE("boost_epsilon") {
    CHECK(boost_epsilon(10, kDefaultEpsilon) == 10);
    CHECK(boost_epsilon(10, 1.0 / (2.0 * std::exp(1.0))) == 10);
    CHECK(boost_epsilon(10, std::exp(-5.0)) == 50);
    CHECK(boost_epsilon(4, 0.01) == 20);
    CHECK_THROWS_AS(boost_epsilon(10, 0.3), BadEpsilon);
    CHECK_THROWS_AS(boost_epsilon(10, 0.0), BadEpsilon);
}

TEST_CASE("boosted bound dominates the directly measured tau(0.01)") {
    for (const auto p : {7, 11, 19}) {
        const auto Kd = oracle::kernel_by_counting(p);
        const auto pid = oracle::stationary_doubles(p);
        const auto base = oracle::mixing_time_per_start(Kd, pid, kDefaultEpsilon);
        const auto direct = oracle::mixing_time_per_start(Kd, pid, 0.01);
        CHECK(direct <= boost_epsilon(base, 0.01));
    }
}

TEST_CASE("four steps reach every circle") {
    for (const auto p : {3, 7, 11, 19, 23, 31}) {
        const auto K = walk_kernel(p).matrix();
        const Eigen::MatrixXd K4 = K * K * K * K;
        CHECK(K4.minCoeff() > 0.0);
    }
    // c_1 returns to itself in every number of steps above 3
    const auto K = walk_kernel(7).matrix();
    Eigen::MatrixXd Kt = K * K * K;
    for (int t = 4; t < 12; ++t) {
        Kt = Kt * K;
        CHECK(Kt(1, 1) > 0.0);
    }
}
