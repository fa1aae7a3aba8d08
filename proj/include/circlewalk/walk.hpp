#pragma once

/**
 * @file walk.hpp
 * @brief The circle random walk as a Markov chain on {c_0, ..., c_{p-1}}.
 *
 * The kernel K(c_i, c_j) = n_im^j moves from circle C_i by a uniform step of
 * C_m. All one-step identities (row sums, stationarity, detailed balance)
 * are checked in exact rationals; iterated kernels use the double
 * projection, since K^t has denominators (p+1)^t.
 */

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "circlewalk/circles.hpp"
#include "circlewalk/rational.hpp"

namespace circlewalk {

/// 1/(2e), the customary mixing threshold.
inline constexpr double kDefaultEpsilon = 0.18393972058572117;

/// Row-stochastic matrix stored as integer numerators over one common
/// denominator, which keeps every entry exact.
class StochasticKernel {
public:
    /// Throws NotStochastic if an entry is negative or a row does not sum
    /// to the denominator.
    StochasticKernel(std::uint32_t states, std::vector<std::int64_t> numerators,
                     std::int64_t denominator);

    std::uint32_t states() const noexcept { return states_; }
    std::int64_t denominator() const noexcept { return denominator_; }
    std::int64_t numerator(std::uint32_t i, std::uint32_t j) const {
        return numerators_[static_cast<std::size_t>(i) * states_ + j];
    }
    bool has_edge(std::uint32_t i, std::uint32_t j) const { return numerator(i, j) > 0; }

    Rational exact(std::uint32_t i, std::uint32_t j) const {
        return make_rational(numerator(i, j), denominator_);
    }
    double operator()(std::uint32_t i, std::uint32_t j) const { return matrix_(i, j); }
    const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }

private:
    std::uint32_t states_;
    std::vector<std::int64_t> numerators_;
    std::int64_t denominator_;
    Eigen::MatrixXd matrix_;
};

/// K(i, j) = n_im^j. Throws ZeroGenerator for m = 0.
StochasticKernel build_kernel(const StructureTensor& tensor, std::uint32_t m = 1);

StochasticKernel identity_kernel(std::uint32_t states);

/// Probability vector over states, either exact (rational weights with a
/// double projection) or approximate (doubles only).
class Distribution {
public:
    /// Throws InvalidDistribution unless weights are >= 0 and sum to exactly 1.
    static Distribution exact(std::vector<Rational> weights);
    /// Throws InvalidDistribution unless weights are >= 0 and sum to 1 within 1e-12.
    static Distribution approximate(std::vector<double> weights);

    static Distribution point_mass(std::uint32_t states, std::uint32_t at);
    static Distribution uniform(std::uint32_t states);

    bool is_exact() const noexcept { return exact_.has_value(); }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const noexcept { return values_; }
    /// Throws InvalidDistribution for approximate distributions.
    const std::vector<Rational>& exact_weights() const;

private:
    std::vector<double> values_;
    std::optional<std::vector<Rational>> exact_;
};

/// The limit law: pi(c_0) = 1/p^2 and pi(c_j) = (p+1)/p^2.
Distribution stationary(const PrimeModulus& m);

/// The kernel whose every row is pi (exact pi required).
StochasticKernel equilibrium_kernel(const Distribution& pi);

/// Exact pi K, as a distribution (pi must be exact).
Distribution step_exact(const StochasticKernel& kernel, const Distribution& pi);

struct BalanceCheck {
    bool holds = true;
    std::optional<std::pair<std::uint32_t, std::uint32_t>> witness;

    explicit operator bool() const noexcept { return holds; }
};

/// pi(x) K(x, y) == pi(y) K(y, x) for all pairs, exactly.
BalanceCheck detailed_balance(const StochasticKernel& kernel, const Distribution& dist);

/// Half the L1 distance. Throws LengthMismatch.
double tv_distance(const Distribution& mu, const Distribution& nu);
double tv_distance(const std::vector<double>& mu, const std::vector<double>& nu);
/// Both arguments must be exact.
Rational tv_distance_exact(const Distribution& mu, const Distribution& nu);

/// start K^t in double precision.
Distribution iterate(const StochasticKernel& kernel, const Distribution& start, std::uint64_t t);

struct MixingOptions {
    double epsilon = kDefaultEpsilon;
    std::uint64_t max_steps = 1000;
    /// Start states to maximize over; empty means every state.
    std::vector<std::uint32_t> starts;
    /// Allow the all-starts iteration above kExactMixingLimit states.
    bool force = false;
};

struct MixingReport {
    double epsilon = kDefaultEpsilon;
    std::uint64_t tau = 0;
    std::vector<double> tv_curve;                // worst TV over starts, t = 0..tau
    std::vector<std::uint32_t> curve_worst;      // argmax start at each t
    std::uint32_t worst_start = 0;               // start with the largest hitting time
};

inline constexpr std::uint32_t kExactMixingLimit = 499;

/// tau(eps) = max over starts of the first t with TV(K^t(i, .), pi) <= eps.
/// Throws BadEpsilon, NotMixed (with the curve so far) or GateExceeded.
MixingReport mixing_time(const StochasticKernel& kernel, const Distribution& pi,
                         const MixingOptions& options = {});

/// Upper bound on tau(eps) from tau(1/(2e)): tau_base * ceil(ln(1/eps)),
/// and tau_base itself at eps = 1/(2e). Throws BadEpsilon outside (0, 1/(2e)].
std::uint64_t boost_epsilon(std::uint64_t tau_base, double epsilon);

}  // namespace circlewalk
