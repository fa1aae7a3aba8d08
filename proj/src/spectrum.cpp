#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "circlewalk/bounds.hpp"
#include "circlewalk/errors.hpp"

namespace circlewalk {

SpectrumReport spectrum(const StochasticKernel& kernel, const Distribution& pi) {
    const auto n = kernel.states();
    if (pi.size() != n) throw LengthMismatch("stationary and kernel sizes differ");
    // Symmetry of S is exactly detailed balance, so check it in rationals first.
    const auto balance = detailed_balance(kernel, pi);
    if (!balance) {
        throw NotReversible("detailed balance fails at (" + std::to_string(balance.witness->first) +
                            ", " + std::to_string(balance.witness->second) + ")");
    }

    const auto& w = pi.values();
    if (std::any_of(w.begin(), w.end(), [](double v) { return !(v > 0.0); })) {
        throw InvalidDistribution("symmetrization needs a strictly positive distribution");
    }

    SpectrumReport report;
    report.symmetric.resize(n, n);
    for (std::uint32_t x = 0; x < n; ++x)
        for (std::uint32_t y = 0; y < n; ++y)
            report.symmetric(x, y) = std::sqrt(w[x] / w[y]) * kernel(x, y);
    // Both triangles agree up to rounding; average them for the solver.
    const Eigen::MatrixXd sym = 0.5 * (report.symmetric + report.symmetric.transpose());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success) throw Error("symmetric eigensolver did not converge");

    // Eigen sorts ascending.
    const auto& values = solver.eigenvalues();
    const auto& vectors = solver.eigenvectors();
    report.eigenvalues.resize(n);
    report.eigenvectors.resize(n, n);
    for (std::uint32_t r = 0; r < n; ++r) {
        report.eigenvalues[r] = values(n - 1 - r);
        report.eigenvectors.col(r) = vectors.col(n - 1 - r);
    }
    report.gap = 1.0 - report.lambda1();
    report.alpha_star = n > 1 ? std::max(report.lambda1(), std::abs(report.lambda_min())) : 0.0;
    return report;
}

double dirichlet_form(const StochasticKernel& kernel, const Distribution& pi,
                      std::span<const double> f) {
    const auto n = kernel.states();
    if (f.size() != n || pi.size() != n) throw LengthMismatch("Dirichlet form size mismatch");
    double sum = 0.0;
    for (std::uint32_t x = 0; x < n; ++x) {
        for (std::uint32_t y = 0; y < n; ++y) {
            if (!kernel.has_edge(x, y)) continue;
            const double d = f[x] - f[y];
            sum += d * d * pi[x] * kernel(x, y);
        }
    }
    return 0.5 * sum;
}

double spectral_tv_bound(const SpectrumReport& spec, const Distribution& pi, std::uint64_t t) {
    const double pi_min = *std::min_element(pi.values().begin(), pi.values().end());
    return 0.5 / std::sqrt(pi_min) * std::pow(spec.alpha_star, static_cast<double>(t));
}

}  // namespace circlewalk
