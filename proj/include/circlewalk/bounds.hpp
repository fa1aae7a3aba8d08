#pragma once

/**
 * @file bounds.hpp
 * @brief Eigenvalue and mixing-time bounds for the circle walk.
 *
 * Two independent routes bound the mixing time:
 *
 *  - Spectral. Symmetrize K on l^2(pi), compute its spectrum, and compare
 *    against geometric bounds: the path-congestion constant A (upper bound
 *    on the second eigenvalue via comparison with the equilibrium chain),
 *    the odd-cycle constant v (lower bound on the smallest eigenvalue), and
 *    the TV bound (1/2) pi_*^{-1/2} alpha_*^t.
 *
 *  - Coupling. The four-step minorization K^4(i, j) >= c pi(j) with
 *    c = p^2 (p-1) / (p+1)^4 makes TV decay like (1 - c)^n every four steps.
 *
 * Eigenvalues are indexed from 0: lambda_0 = 1 >= lambda_1 >= ... >= lambda_{n-1}.
 */

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "circlewalk/rational.hpp"
#include "circlewalk/walk.hpp"

namespace circlewalk {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

// ---------------------------------------------------------------------------
// Spectrum
// ---------------------------------------------------------------------------

struct SpectrumReport {
    std::vector<double> eigenvalues;  // descending
    Eigen::MatrixXd eigenvectors;     // column r pairs with eigenvalues[r]; vectors of `symmetric`
    Eigen::MatrixXd symmetric;        // S(x, y) = sqrt(pi(x) / pi(y)) K(x, y)
    double alpha_star = 0.0;          // max(lambda_1, |lambda_{n-1}|)
    double gap = 0.0;                 // 1 - lambda_1

    double lambda1() const { return eigenvalues.size() > 1 ? eigenvalues[1] : 0.0; }
    double lambda_min() const { return eigenvalues.back(); }
};

/// Throws NotReversible unless pi K-detailed balance holds exactly (pi exact).
SpectrumReport spectrum(const StochasticKernel& kernel, const Distribution& pi);

/// D(f, f) = (1/2) sum_{x,y} (f(x) - f(y))^2 pi(x) K(x, y).
double dirichlet_form(const StochasticKernel& kernel, const Distribution& pi,
                      std::span<const double> f);

/// (1/2) pi_*^{-1/2} alpha_*^t, an upper bound on TV(K^t(x, .), pi) for every x.
double spectral_tv_bound(const SpectrumReport& spec, const Distribution& pi, std::uint64_t t);

// ---------------------------------------------------------------------------
// Path comparison
// ---------------------------------------------------------------------------

/// One path per ordered pair x != y, as the list of visited states.
class PathAssignment {
public:
    explicit PathAssignment(std::uint32_t states)
        : states_(states), paths_(std::size_t{states} * states) {}

    std::uint32_t states() const noexcept { return states_; }
    void set(std::uint32_t x, std::uint32_t y, std::vector<std::uint32_t> path) {
        paths_[std::size_t{x} * states_ + y] = std::move(path);
    }
    /// Empty when no path has been assigned.
    const std::vector<std::uint32_t>& path(std::uint32_t x, std::uint32_t y) const {
        return paths_[std::size_t{x} * states_ + y];
    }

private:
    std::uint32_t states_;
    std::vector<std::vector<std::uint32_t>> paths_;
};

struct ComparisonResult {
    double A = 0.0;
    double a = 0.0;      // min_x pi'(x) / pi(x)
    Edge edge{0, 0};     // the maximizing edge of K

    /// lambda_i <= 1 - (a / A)(1 - lambda'_i).
    double eigenvalue_bound(double reference_eigenvalue) const {
        return 1.0 - (a / A) * (1.0 - reference_eigenvalue);
    }
};

/// Congestion constant
///   A = max_{(z,w) in E} 1/(pi(z) K(z,w)) sum_{gamma_xy ∋ (z,w)} |gamma_xy| pi'(x) K'(x,y)
/// for paths over the support of `kernel` joining every support pair of
/// `reference`. Throws MissingPath / InvalidPathEdge.
ComparisonResult comparison_A(const StochasticKernel& kernel, const Distribution& pi,
                              const StochasticKernel& reference, const Distribution& reference_pi,
                              const PathAssignment& paths);

/// Paths against the equilibrium chain: c_0 -> c_1 directly, c_0 -> y via
/// {c_0, c_1, c_k, y}, and x -> y via {x, c_k, y}, k smallest valid.
/// Reverse pairs use the same interior states reversed.
PathAssignment default_paths(const PrimeModulus& m);

// ---------------------------------------------------------------------------
// Odd cycles
// ---------------------------------------------------------------------------

/// A closed walk s_0, ..., s_{L-1}; its edges are (s_i, s_{i+1 mod L}), so a
/// single state denotes a self-loop.
using Cycle = std::vector<std::uint32_t>;

struct CycleCollection {
    std::vector<Cycle> cycles;  // cycles[x] passes through x
};

struct CycleBound {
    double v = 0.0;
    double lower_bound = -1.0;  // -1 + 2 / v
    Edge edge{0, 0};
};

/// v = max_e sum_{sigma_x ∋ e} |sigma_x|_K pi(x), |sigma|_K = sum 1/(pi(z) K(z, w)).
/// Edges are directed. Throws EvenCycle / InvalidCycleEdge / LengthMismatch.
CycleBound cycles_v(const StochasticKernel& kernel, const Distribution& pi,
                    const CycleCollection& cycles);

/// For every state, the shortest odd closed walk through it with no
/// repeated directed edge, lexicographically first among equals.
/// Throws NoOddCycle.
CycleCollection default_cycles(const StochasticKernel& kernel);
CycleCollection default_cycles(const PrimeModulus& m);

// ---------------------------------------------------------------------------
// Closed forms and coupling
// ---------------------------------------------------------------------------

struct ClosedFormBounds {
    double comparison_A = 0.0;     // 3 (p+3)(p+1)^2 / p^2
    double alpha1_upper = 0.0;     // 1 - p^2 / (3 (p+3)(p+1)^2)
    double v = 0.0;                // 63 (p+1)
    double alpha_min_lower = 0.0;  // -1 + 2 / (63 (p+1))
};

ClosedFormBounds closed_form_bounds(const PrimeModulus& m);

struct CouplingBound {
    Rational minorization;         // p^2 (p-1) / (p+1)^4
    double contraction = 0.0;      // 1 - minorization
    std::uint64_t n = 0;           // smallest n with contraction^n < epsilon
    std::uint64_t tau_bound = 0;   // 4 n
    std::uint64_t n_closed_form = 0;  // ceil(ln(1/eps) (p+1)^4 / (p^2 (p-1)))
};

/// Throws BadEpsilon outside (0, 1).
CouplingBound coupling_bound(const PrimeModulus& m, double epsilon = kDefaultEpsilon);

inline constexpr std::uint32_t kExactFourStepLimit = 199;

struct MinorizationReport {
    bool holds = true;
    bool exact = true;
    bool four_step_positive = true;
    Rational claimed_constant;                 // p^2 (p-1) / (p+1)^4
    double min_ratio = 0.0;                    // min_{i,j} K^4(i,j) / pi(j)
    std::optional<Rational> min_ratio_exact;
    Edge argmin{0, 0};
    std::optional<Edge> violation;
};

/// Checks K^4(i, j) >= c pi(j) entrywise, exactly up to kExactFourStepLimit
/// states (or when forced) and in doubles with 1e-12 slack beyond.
MinorizationReport doeblin_claim_check(const StochasticKernel& kernel, const Distribution& pi,
                                       bool force_exact = false);

/// Exact K^4 as integer numerators over denominator^4; empty if that would overflow.
std::vector<std::int64_t> four_step_numerators(const StochasticKernel& kernel);

// ---------------------------------------------------------------------------
// Per-prime summary
// ---------------------------------------------------------------------------

struct BoundReport {
    std::uint32_t p = 0;
    double lambda1 = 0.0;
    double lambda_min = 0.0;
    double alpha_star = 0.0;
    double comparison_A = 0.0;
    double alpha1_upper = 0.0;     // 1 - 1 / comparison_A
    double v_value = 0.0;
    double alpha_min_lower = 0.0;  // -1 + 2 / v_value
    ClosedFormBounds closed_form;
    std::uint64_t coupling_n = 0;
    std::uint64_t coupling_tau = 0;  // 4 coupling_n
    std::uint64_t coupling_n_closed_form = 0;
    std::optional<std::uint64_t> tau_measured;
};

/// Runs the spectral, comparison, cycle and coupling pipeline for one prime.
/// tau_measured is filled when p <= kExactMixingLimit or `force_mixing`.
BoundReport bound_report(const PrimeModulus& m, double epsilon = kDefaultEpsilon,
                         bool force_mixing = false);

/// Step budget for mixing_time: ten times the coupling bound.
std::uint64_t default_mixing_steps(const PrimeModulus& m, double epsilon = kDefaultEpsilon);

}  // namespace circlewalk
