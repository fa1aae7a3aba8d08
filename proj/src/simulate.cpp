#include "circlewalk/simulate.hpp"

#include <stdexcept>

namespace circlewalk {

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(seq);
}

std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound) {
    // Largest multiple of bound representable; draws at or above it are rejected.
    const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound + 1) % bound;
    for (;;) {
        const std::uint64_t draw = engine();
        if (draw <= limit) return draw % bound;
    }
}

SimulationResult simulate(const PrimeModulus& m, const SimulationOptions& options) {
    if (options.trials == 0) throw std::invalid_argument("simulate needs at least one trial");
    const auto p = m.value();
    const auto unit = circle_points(m, 1).points;

    SimulationResult result;
    result.counts.assign(p, 0);
    if (options.track_plane) result.plane_counts.assign(std::size_t{p} * p, 0);
    result.sample.seed = options.seed;

    for (std::uint64_t trial = 0; trial < options.trials; ++trial) {
        auto engine = trial_engine(options.seed, trial);
        Point pos{0, 0};
        const bool record = trial == 0;
        if (record) {
            result.sample.positions.push_back(pos);
            result.sample.quadrances.push_back(0);
        }
        for (std::uint64_t s = 0; s < options.steps; ++s) {
            const auto& step = unit[uniform_below(engine, unit.size())];
            pos = {m.add(pos.x, step.x), m.add(pos.y, step.y)};
            if (record) {
                result.sample.positions.push_back(pos);
                result.sample.quadrances.push_back(quadrance(m, pos));
            }
        }
        ++result.counts[quadrance(m, pos)];
        if (options.track_plane) ++result.plane_counts[std::size_t{pos.x} * p + pos.y];
    }

    std::vector<Rational> freq;
    freq.reserve(p);
    for (const auto c : result.counts) {
        freq.push_back(make_rational(c, static_cast<std::int64_t>(options.trials)));
    }
    result.empirical = Distribution::exact(std::move(freq));
    return result;
}

}  // namespace circlewalk
