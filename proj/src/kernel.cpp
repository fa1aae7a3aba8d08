#include <limits>
#include <string>

#include "circlewalk/errors.hpp"
#include "circlewalk/walk.hpp"

namespace circlewalk {

StochasticKernel::StochasticKernel(std::uint32_t states, std::vector<std::int64_t> numerators,
                                   std::int64_t denominator)
    : states_(states),
      numerators_(std::move(numerators)),
      denominator_(denominator),
      matrix_(states, states) {
    const auto n = static_cast<std::size_t>(states);
    if (states == 0 || numerators_.size() != n * n) {
        throw NotStochastic("kernel needs states^2 numerators");
    }
    if (denominator_ <= 0) throw NotStochastic("kernel denominator must be positive");
    for (std::uint32_t i = 0; i < states; ++i) {
        std::int64_t row = 0;
        for (std::uint32_t j = 0; j < states; ++j) {
            const auto v = numerators_[i * n + j];
            if (v < 0) {
                throw NotStochastic("negative entry at (" + std::to_string(i) + ", " +
                                    std::to_string(j) + ")");
            }
            row += v;
            matrix_(i, j) = static_cast<double>(v) / static_cast<double>(denominator_);
        }
        if (row != denominator_) {
            throw NotStochastic("row " + std::to_string(i) + " does not sum to 1");
        }
    }
}

StochasticKernel build_kernel(const StructureTensor& tensor, std::uint32_t m) {
    if (m == 0) throw ZeroGenerator("the walk generated by C_0 never moves");
    const auto p = tensor.order();
    if (m >= p) throw IndexOutOfRange("generator index out of range");
    const auto n = static_cast<std::size_t>(p);
    const std::int64_t den = std::int64_t{p} + 1;
    std::vector<std::int64_t> num(n * n);
    for (std::uint32_t i = 0; i < p; ++i) {
        for (std::uint32_t j = 0; j < p; ++j) {
            const std::int64_t mult = tensor.multiplicity(i, m, j);
            // Row 0 is a point mass (units of 1), every other row is in units of 1/(p+1).
            num[i * n + j] = i == 0 ? mult * den : mult;
        }
    }
    return StochasticKernel(p, std::move(num), den);
}

StochasticKernel identity_kernel(std::uint32_t states) {
    const auto n = static_cast<std::size_t>(states);
    std::vector<std::int64_t> num(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) num[i * n + i] = 1;
    return StochasticKernel(states, std::move(num), 1);
}

StochasticKernel equilibrium_kernel(const Distribution& pi) {
    const auto& w = pi.exact_weights();
    mpz_class common = 1;
    for (const auto& x : w) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), x.get_den_mpz_t());
    if (!common.fits_slong_p()) throw NotStochastic("equilibrium denominator overflows");
    const auto n = w.size();
    std::vector<std::int64_t> row(n);
    for (std::size_t j = 0; j < n; ++j) {
        mpz_class scaled = w[j].get_num() * (common / w[j].get_den());
        if (!scaled.fits_slong_p()) throw NotStochastic("equilibrium numerator overflows");
        row[j] = scaled.get_si();
    }
    std::vector<std::int64_t> num;
    num.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) num.insert(num.end(), row.begin(), row.end());
    return StochasticKernel(static_cast<std::uint32_t>(n), std::move(num), common.get_si());
}

}  // namespace circlewalk
