#include <algorithm>
#include <cmath>
#include <limits>

#include "circlewalk/bounds.hpp"
#include "circlewalk/errors.hpp"

namespace circlewalk {

ClosedFormBounds closed_form_bounds(const PrimeModulus& m) {
    const double p = m.value();
    ClosedFormBounds b;
    b.comparison_A = 3.0 * (p + 3.0) * (p + 1.0) * (p + 1.0) / (p * p);
    b.alpha1_upper = 1.0 - (p * p) / (3.0 * (p + 3.0) * (p + 1.0) * (p + 1.0));
    b.v = 63.0 * (p + 1.0);
    b.alpha_min_lower = -1.0 + 2.0 / b.v;
    return b;
}

namespace {

Rational minorization_constant(std::int64_t p) {
    const std::int64_t q = p + 1;
    Rational c(mpz_class(static_cast<long>(p * p * (p - 1))), mpz_class(static_cast<long>(q)) * q * q * q);
    c.canonicalize();
    return c;
}

long double power(long double base, std::uint64_t n) {
    long double r = 1.0L;
    for (std::uint64_t i = 0; i < n; ++i) r *= base;
    return r;
}

}  // namespace

CouplingBound coupling_bound(const PrimeModulus& m, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw BadEpsilon("epsilon must lie in (0, 1)");
    const std::int64_t p = m.value();

    CouplingBound b;
    b.minorization = minorization_constant(p);
    const long double x = b.minorization.get_d();
    const long double q = 1.0L - x;
    b.contraction = static_cast<double>(q);

    // Logarithm gives the guess; repeated multiplication settles the boundary.
    const long double eps = epsilon;
    auto n = static_cast<std::uint64_t>(std::max(1.0L, std::ceil(std::log(eps) / std::log(q))));
    while (!(power(q, n) < eps)) ++n;
    while (n > 1 && power(q, n - 1) < eps) --n;
    b.n = n;
    b.tau_bound = 4 * n;

    const long double scale = std::pow(static_cast<long double>(p + 1), 4) /
                              (static_cast<long double>(p) * p * (p - 1));
    b.n_closed_form = static_cast<std::uint64_t>(std::ceil(-std::log(eps) * scale));
    return b;
}

std::vector<std::int64_t> four_step_numerators(const StochasticKernel& kernel) {
    const auto n = static_cast<std::size_t>(kernel.states());
    // Entries of C^k are at most denominator^k, so this check rules out overflow.
    const long double d = static_cast<long double>(kernel.denominator());
    if (d * d * d * d >= static_cast<long double>(std::numeric_limits<std::int64_t>::max()) / 2) {
        return {};
    }
    std::vector<std::int64_t> c(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            c[i * n + j] = kernel.numerator(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));

    auto multiply = [n](const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
        std::vector<std::int64_t> out(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const auto aik = a[i * n + k];
                if (aik == 0) continue;
                for (std::size_t j = 0; j < n; ++j) out[i * n + j] += aik * b[k * n + j];
            }
        return out;
    };
    const auto c2 = multiply(c, c);
    return multiply(c2, c2);
}

MinorizationReport doeblin_claim_check(const StochasticKernel& kernel, const Distribution& pi,
                                       bool force_exact) {
    const auto n = kernel.states();
    if (pi.size() != n) throw LengthMismatch("stationary and kernel sizes differ");

    MinorizationReport report;
    report.claimed_constant = minorization_constant(n);
    report.min_ratio = std::numeric_limits<double>::infinity();

    std::vector<std::int64_t> exact;
    if ((n <= kExactFourStepLimit || force_exact) && pi.is_exact()) {
        exact = four_step_numerators(kernel);
    }

    if (!exact.empty()) {
        const auto& w = pi.exact_weights();
        mpz_class d4 = kernel.denominator();
        d4 = d4 * d4 * d4 * d4;
        std::optional<Rational> best;
        for (std::uint32_t i = 0; i < n; ++i) {
            for (std::uint32_t j = 0; j < n; ++j) {
                const auto num = exact[std::size_t{i} * n + j];
                if (num <= 0) report.four_step_positive = false;
                Rational k4(mpz_class(static_cast<long>(num)), d4);
                k4.canonicalize();
                if (k4 < report.claimed_constant * w[j]) {
                    report.holds = false;
                    if (!report.violation) report.violation = Edge{i, j};
                }
                if (sgn(w[j]) == 0) continue;
                Rational ratio = k4 / w[j];
                if (!best || ratio < *best) {
                    best = ratio;
                    report.argmin = {i, j};
                }
            }
        }
        report.min_ratio_exact = best;
        if (best) report.min_ratio = best->get_d();
        return report;
    }

    report.exact = false;
    const Eigen::MatrixXd k2 = kernel.matrix() * kernel.matrix();
    const Eigen::MatrixXd k4 = k2 * k2;
    const double c = report.claimed_constant.get_d();
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            const double v = k4(i, j);
            if (!(v > 0.0)) report.four_step_positive = false;
            if (v < c * pi[j] - 1e-12) {
                report.holds = false;
                if (!report.violation) report.violation = Edge{i, j};
            }
            const double ratio = v / pi[j];
            if (ratio < report.min_ratio) {
                report.min_ratio = ratio;
                report.argmin = {i, j};
            }
        }
    }
    return report;
}

std::uint64_t default_mixing_steps(const PrimeModulus& m, double epsilon) {
    return 10 * coupling_bound(m, epsilon).tau_bound;
}

BoundReport bound_report(const PrimeModulus& m, double epsilon, bool force_mixing) {
    const StructureTensor tensor(m);
    const auto kernel = build_kernel(tensor, 1);
    const auto pi = stationary(m);
    const auto spec = spectrum(kernel, pi);

    BoundReport r;
    r.p = m.value();
    r.lambda1 = spec.lambda1();
    r.lambda_min = spec.lambda_min();
    r.alpha_star = spec.alpha_star;

    const auto comparison =
        comparison_A(kernel, pi, equilibrium_kernel(pi), pi, default_paths(m));
    r.comparison_A = comparison.A;
    r.alpha1_upper = 1.0 - 1.0 / comparison.A;

    const auto cycles = cycles_v(kernel, pi, default_cycles(kernel));
    r.v_value = cycles.v;
    r.alpha_min_lower = cycles.lower_bound;

    r.closed_form = closed_form_bounds(m);

    const auto coupling = coupling_bound(m, epsilon);
    r.coupling_n = coupling.n;
    r.coupling_tau = coupling.tau_bound;
    r.coupling_n_closed_form = coupling.n_closed_form;

    if (m.value() <= kExactMixingLimit || force_mixing) {
        MixingOptions options;
        options.epsilon = epsilon;
        options.max_steps = 10 * coupling.tau_bound;
        options.force = force_mixing;
        r.tau_measured = mixing_time(kernel, pi, options).tau;
    }
    return r;
}

}  // namespace circlewalk
