#include <algorithm>
#include <cmath>
#include <string>

#include "circlewalk/errors.hpp"
#include "circlewalk/walk.hpp"

namespace circlewalk {

Distribution Distribution::exact(std::vector<Rational> weights) {
    Rational total(0);
    for (const auto& w : weights) {
        if (sgn(w) < 0) throw InvalidDistribution("negative weight " + to_string(w));
        total += w;
    }
    if (total != 1) throw InvalidDistribution("weights sum to " + to_string(total));
    Distribution d;
    d.values_.reserve(weights.size());
    for (const auto& w : weights) d.values_.push_back(to_double(w));
    d.exact_ = std::move(weights);
    return d;
}

Distribution Distribution::approximate(std::vector<double> weights) {
    double total = 0.0;
    for (const double w : weights) {
        if (!(w >= 0.0)) throw InvalidDistribution("negative or NaN weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw InvalidDistribution("weights sum to " + std::to_string(total));
    }
    Distribution d;
    d.values_ = std::move(weights);
    return d;
}

Distribution Distribution::point_mass(std::uint32_t states, std::uint32_t at) {
    if (at >= states) throw IndexOutOfRange("point mass outside the state space");
    std::vector<Rational> w(states, Rational(0));
    w[at] = 1;
    return exact(std::move(w));
}

Distribution Distribution::uniform(std::uint32_t states) {
    return exact(std::vector<Rational>(states, make_rational(1, states)));
}

const std::vector<Rational>& Distribution::exact_weights() const {
    if (!exact_) throw InvalidDistribution("distribution has no exact weights");
    return *exact_;
}

Distribution stationary(const PrimeModulus& m) {
    const std::int64_t p = m.value();
    std::vector<Rational> w(static_cast<std::size_t>(p), make_rational(p + 1, p * p));
    w[0] = make_rational(1, p * p);
    return Distribution::exact(std::move(w));
}

Distribution step_exact(const StochasticKernel& kernel, const Distribution& pi) {
    const auto& w = pi.exact_weights();
    const auto n = kernel.states();
    if (w.size() != n) throw LengthMismatch("distribution and kernel sizes differ");
    std::vector<Rational> out(n, Rational(0));
    for (std::uint32_t x = 0; x < n; ++x) {
        if (sgn(w[x]) == 0) continue;
        for (std::uint32_t y = 0; y < n; ++y) {
            if (kernel.has_edge(x, y)) out[y] += w[x] * kernel.exact(x, y);
        }
    }
    return Distribution::exact(std::move(out));
}

BalanceCheck detailed_balance(const StochasticKernel& kernel, const Distribution& dist) {
    const auto& w = dist.exact_weights();
    const auto n = kernel.states();
    if (w.size() != n) throw LengthMismatch("distribution and kernel sizes differ");
    for (std::uint32_t x = 0; x < n; ++x) {
        for (std::uint32_t y = x + 1; y < n; ++y) {
            if (w[x] * kernel.exact(x, y) != w[y] * kernel.exact(y, x)) {
                return {false, std::make_pair(x, y)};
            }
        }
    }
    return {};
}

double tv_distance(const std::vector<double>& mu, const std::vector<double>& nu) {
    if (mu.size() != nu.size()) throw LengthMismatch("TV distance of different lengths");
    double sum = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) sum += std::abs(mu[i] - nu[i]);
    return 0.5 * sum;
}

double tv_distance(const Distribution& mu, const Distribution& nu) {
    return tv_distance(mu.values(), nu.values());
}

Rational tv_distance_exact(const Distribution& mu, const Distribution& nu) {
    const auto& a = mu.exact_weights();
    const auto& b = nu.exact_weights();
    if (a.size() != b.size()) throw LengthMismatch("TV distance of different lengths");
    Rational sum(0);
    for (std::size_t i = 0; i < a.size(); ++i) sum += abs(Rational(a[i] - b[i]));
    return sum / 2;
}

Distribution iterate(const StochasticKernel& kernel, const Distribution& start, std::uint64_t t) {
    if (start.size() != kernel.states()) throw LengthMismatch("start and kernel sizes differ");
    if (t == 0) return start;
    Eigen::RowVectorXd v = Eigen::Map<const Eigen::RowVectorXd>(
        start.values().data(), static_cast<Eigen::Index>(start.size()));
    for (std::uint64_t s = 0; s < t; ++s) v = v * kernel.matrix();
    return Distribution::approximate(std::vector<double>(v.data(), v.data() + v.size()));
}

MixingReport mixing_time(const StochasticKernel& kernel, const Distribution& pi,
                         const MixingOptions& options) {
    const auto n = kernel.states();
    if (!(options.epsilon > 0.0 && options.epsilon <= 1.0)) {
        throw BadEpsilon("epsilon must lie in (0, 1]");
    }
    if (pi.size() != n) throw LengthMismatch("stationary and kernel sizes differ");

    std::vector<std::uint32_t> starts = options.starts;
    if (starts.empty()) {
        if (n > kExactMixingLimit && !options.force) {
            throw GateExceeded("all-starts mixing is limited to " +
                               std::to_string(kExactMixingLimit) + " states");
        }
        starts.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) starts[i] = i;
    }
    for (const auto s : starts) {
        if (s >= n) throw IndexOutOfRange("start state out of range");
    }

    const auto rows = static_cast<Eigen::Index>(starts.size());
    Eigen::MatrixXd state = Eigen::MatrixXd::Zero(rows, n);
    for (Eigen::Index r = 0; r < rows; ++r) state(r, starts[static_cast<std::size_t>(r)]) = 1.0;
    const Eigen::RowVectorXd target =
        Eigen::Map<const Eigen::RowVectorXd>(pi.values().data(), n);

    MixingReport report;
    report.epsilon = options.epsilon;
    constexpr std::uint64_t kUnhit = ~std::uint64_t{0};
    std::vector<std::uint64_t> first_hit(starts.size(), kUnhit);

    for (std::uint64_t t = 0;; ++t) {
        double worst = -1.0;
        std::uint32_t worst_state = 0;
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double tv = 0.5 * (state.row(r) - target).cwiseAbs().sum();
            const auto idx = static_cast<std::size_t>(r);
            if (tv > worst) {
                worst = tv;
                worst_state = starts[idx];
            }
            if (tv <= options.epsilon && first_hit[idx] == kUnhit) first_hit[idx] = t;
        }
        report.tv_curve.push_back(worst);
        report.curve_worst.push_back(worst_state);
        if (worst <= options.epsilon) {
            report.tau = t;
            break;
        }
        if (t >= options.max_steps) {
            throw NotMixed("worst-case TV still above epsilon after " +
                               std::to_string(options.max_steps) + " steps",
                           report.tv_curve);
        }
        state = state * kernel.matrix();
    }

    const auto latest = *std::max_element(first_hit.begin(), first_hit.end());
    report.worst_start = n;
    for (std::size_t r = 0; r < starts.size(); ++r) {
        if (first_hit[r] == latest) report.worst_start = std::min(report.worst_start, starts[r]);
    }
    return report;
}

std::uint64_t boost_epsilon(std::uint64_t tau_base, double epsilon) {
    constexpr double kTolerance = 1e-12;
    if (!(epsilon > 0.0) || epsilon > kDefaultEpsilon * (1.0 + kTolerance)) {
        throw BadEpsilon("boosting needs 0 < epsilon <= 1/(2e)");
    }
    if (epsilon >= kDefaultEpsilon * (1.0 - kTolerance)) return tau_base;
    const double log_inv = -std::log(epsilon);
    const double nearest = std::round(log_inv);
    const double factor = std::abs(log_inv - nearest) < 1e-9 ? nearest : std::ceil(log_inv);
    return tau_base * static_cast<std::uint64_t>(factor);
}

}  // namespace circlewalk
