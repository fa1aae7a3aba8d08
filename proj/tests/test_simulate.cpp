#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "circlewalk/simulate.hpp"
#include "oracles.hpp"

using namespace circlewalk;

TEST_CASE("zero and one steps") {
    const auto m = make_modulus(7);
    SimulationOptions opt;
    opt.trials = 500;

    opt.steps = 0;
    const auto still = simulate(m, opt);
    CHECK(still.counts[0] == 500);
    CHECK(still.empirical.exact_weights()[0] == 1);

    opt.steps = 1;
    const auto once = simulate(m, opt);
    CHECK(once.counts[1] == 500);
    CHECK(once.empirical.exact_weights()[1] == 1);

    opt.trials = 0;
    CHECK_THROWS_AS(simulate(m, opt), std::invalid_argument);
}

TEST_CASE("uniform_below stays in range and covers it") {
    auto engine = trial_engine(7, 0);
    std::vector<int> seen(8, 0);
    for (int i = 0; i < 4000; ++i) {
        const auto v = uniform_below(engine, 8);
        REQUIRE(v < 8);
        ++seen[v];
    }
    for (const auto c : seen) CHECK(c > 400);
}

TEST_CASE("trace invariants") {
    const auto m = make_modulus(11);
    SimulationOptions opt;
    opt.steps = 60;
    opt.seed = 9;
    const auto r = simulate(m, opt);
    const auto& tr = r.sample;
    REQUIRE(tr.positions.size() == 61);
    REQUIRE(tr.quadrances.size() == 61);
    CHECK(tr.seed == 9);
    CHECK(tr.positions[0] == Point{0, 0});
    for (std::size_t t = 0; t < tr.positions.size(); ++t) {
        CHECK(tr.quadrances[t] == quadrance(m, tr.positions[t]));
        if (t == 0) continue;
        const Point d{m.sub(tr.positions[t].x, tr.positions[t - 1].x),
                      m.sub(tr.positions[t].y, tr.positions[t - 1].y)};
        CHECK(quadrance(m, d) == 1);
    }
}

TEST_CASE("same seed reproduces, different seed differs") {
    const auto m = make_modulus(7);
    SimulationOptions opt;
    opt.steps = 15;
    opt.trials = 2000;
    opt.track_plane = true;
    const auto a = simulate(m, opt);
    const auto b = simulate(m, opt);
    CHECK(a.counts == b.counts);
    CHECK(a.plane_counts == b.plane_counts);
    CHECK(a.sample.positions == b.sample.positions);
    opt.seed = 43;
    CHECK(simulate(m, opt).sample.positions != a.sample.positions);
}

TEST_CASE("empirical law matches exact iteration at p = 7") {
    const auto m = make_modulus(7);
    const auto K = oracle::kernel_by_counting(7);
    std::vector<double> exact(7, 0.0);
    exact[0] = 1.0;
    for (int t = 0; t < 20; ++t) exact = oracle::step(exact, K);

    SimulationOptions opt;
    opt.steps = 20;
    opt.trials = 100000;
    opt.seed = 42;
    const auto a = simulate(m, opt);
    CHECK(oracle::tv(a.empirical.values(), exact) <= 0.02);

    opt.seed = 4242;
    const auto b = simulate(m, opt);
    const double n = static_cast<double>(opt.trials);
    for (std::size_t k = 0; k < 7; ++k) {
        // difference of two independent frequencies: variance 2 q (1 - q) / n
        const double se = std::sqrt(2.0 * exact[k] * (1.0 - exact[k]) / n);
        CAPTURE(k);
        CHECK(std::abs(a.empirical[k] - b.empirical[k]) <= 3.0 * se);
    }
}

TEST_CASE("plane histogram approaches uniform") {
    const auto m = make_modulus(7);
    SimulationOptions opt;
    opt.steps = 40;
    opt.trials = 49000;
    opt.track_plane = true;
    const auto r = simulate(m, opt);
    std::vector<double> freq, uniform(49, 1.0 / 49.0);
    for (const auto c : r.plane_counts) freq.push_back(static_cast<double>(c) / 49000.0);
    CHECK(oracle::tv(freq, uniform) < 0.05);

    std::int64_t total = 0;
    for (std::uint32_t k = 0; k < 7; ++k) {
        std::int64_t on_circle = 0;
        for (const auto& pt : circle_points(m, k).points) on_circle += r.plane_counts[pt.x * 7 + pt.y];
        CHECK(on_circle == r.counts[k]);
        total += on_circle;
    }
    CHECK(total == 49000);
}
