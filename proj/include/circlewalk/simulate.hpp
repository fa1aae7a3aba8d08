#pragma once

// Monte Carlo walk on the plane F_p x F_p: start at (0, 0), add a uniform
// point of C_1 each step. Trial t draws from an mt19937_64 seeded with
// (seed, t) through std::seed_seq, so results do not depend on how trials
// are scheduled and are bit-reproducible for a given (seed, p, steps, trials).

#include <cstdint>
#include <random>
#include <vector>

#include "circlewalk/circles.hpp"
#include "circlewalk/walk.hpp"

namespace circlewalk {

struct WalkTrace {
    std::uint64_t seed = 0;
    std::vector<Point> positions;          // positions[0] = (0, 0)
    std::vector<std::uint32_t> quadrances;
};

struct SimulationOptions {
    std::uint64_t steps = 0;
    std::uint64_t trials = 1;
    std::uint64_t seed = 42;
    /// Also histogram the final plane point (p^2 bins).
    bool track_plane = false;
};

struct SimulationResult {
    std::vector<std::int64_t> counts;        // final quadrance histogram
    Distribution empirical;                  // counts / trials
    std::vector<std::int64_t> plane_counts;  // index x * p + y; empty unless tracked
    WalkTrace sample;                        // trial 0
};

/// Engine for one trial.
std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial);

/// Uniform integer in [0, bound) by rejection; portable across standard libraries.
std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound);

/// Throws std::invalid_argument for trials = 0.
SimulationResult simulate(const PrimeModulus& m, const SimulationOptions& options);

}  // namespace circlewalk
