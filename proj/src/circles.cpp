#include "circlewalk/circles.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "circlewalk/errors.hpp"

namespace circlewalk {

std::uint32_t quadrance(const PrimeModulus& m, Point pt) {
    return m.add(m.mul(pt.x, pt.x), m.mul(pt.y, pt.y));
}

CirclePointSet circle_points(const PrimeModulus& m, std::uint32_t k) {
    const auto p = m.value();
    if (k >= p) throw IndexOutOfRange("circle index " + std::to_string(k) + " >= p");
    CirclePointSet set{k, {}};
    set.points.reserve(k == 0 ? 1 : p + 1);
    for (std::uint32_t x = 0; x < p; ++x) {
        const auto rest = m.sub(k, m.mul(x, x));
        if (m.classify(rest) == Residue::nonsquare) continue;
        const auto y = m.sqrt(rest);
        set.points.push_back({x, y});
        if (y != 0) set.points.push_back({x, p - y});
    }
    std::sort(set.points.begin(), set.points.end());
    set.points.erase(std::unique(set.points.begin(), set.points.end()), set.points.end());
    return set;
}

std::uint64_t circle_size(const PrimeModulus& m, std::uint32_t k) {
    return k == 0 ? 1 : std::uint64_t{m.value()} + 1;
}

StructureTensor::StructureTensor(PrimeModulus m, bool dense_cache)
    : modulus_(std::move(m)), inv4_(modulus_.inverse(4)) {
    const auto p = modulus_.value();
    if (dense_cache && p <= kDenseCacheLimit) {
        const auto n = static_cast<std::size_t>(p);
        cache_.resize(n * n * n);
        for (std::uint32_t i = 0; i < p; ++i)
            for (std::uint32_t j = 0; j < p; ++j)
                for (std::uint32_t k = 0; k < p; ++k)
                    cache_[(i * n + j) * n + k] = evaluate(i, j, k);
    }
}

void StructureTensor::check_indices(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
    const auto p = modulus_.value();
    if (i >= p || j >= p || k >= p) {
        std::ostringstream msg;
        msg << "structure constant index (" << i << ", " << j << ", " << k
            << ") out of range for p = " << p;
        throw IndexOutOfRange(msg.str());
    }
}

std::uint8_t StructureTensor::evaluate(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
    // C_0 is the unit: a step from the single point (0, 0) goes nowhere.
    if (i == 0) return k == j ? 1 : 0;
    if (j == 0) return k == i ? 1 : 0;
    const auto& m = modulus_;
    const auto d = m.sub(m.sub(k, i), j);
    const auto v = m.sub(m.mul(i, j), m.mul(m.mul(d, d), inv4_));
    switch (m.classify(v)) {
        case Residue::zero:
            return 1;
        case Residue::square:
            return 2;
        case Residue::nonsquare:
            break;
    }
    return 0;
}

std::uint8_t StructureTensor::multiplicity(std::uint32_t i, std::uint32_t j,
                                           std::uint32_t k) const {
    check_indices(i, j, k);
    if (has_cache()) {
        const std::size_t n = modulus_.value();
        return cache_[(i * n + j) * n + k];
    }
    return evaluate(i, j, k);
}

std::int64_t StructureTensor::raw_count(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
    const auto mult = static_cast<std::int64_t>(multiplicity(i, j, k));
    const auto sizes = static_cast<std::int64_t>(circle_size(modulus_, i) * circle_size(modulus_, j));
    if (i == 0 || j == 0) return mult * sizes;
    // sizes = (p+1)^2 and mult is in units of 1/(p+1)
    return mult * static_cast<std::int64_t>(modulus_.value() + 1);
}

Rational StructureTensor::constant(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
    const auto mult = multiplicity(i, j, k);
    if (i == 0 || j == 0) return Rational(mult);
    return make_rational(mult, static_cast<std::int64_t>(modulus_.value()) + 1);
}

std::vector<std::int64_t> bruteforce_counts(const PrimeModulus& m, std::uint32_t i,
                                            std::uint32_t j) {
    const auto ci = circle_points(m, i);
    const auto cj = circle_points(m, j);
    std::vector<std::int64_t> counts(m.value(), 0);
    for (const auto& a : ci.points) {
        for (const auto& b : cj.points) {
            ++counts[quadrance(m, {m.add(a.x, b.x), m.add(a.y, b.y)})];
        }
    }
    return counts;
}

Rational structure_constant_bruteforce(const PrimeModulus& m, std::uint32_t i, std::uint32_t j,
                                       std::uint32_t k) {
    const auto p = m.value();
    if (i >= p || j >= p || k >= p) {
        throw IndexOutOfRange("brute-force index out of range for p = " + std::to_string(p));
    }
    const auto counts = bruteforce_counts(m, i, j);
    const auto pairs = static_cast<std::int64_t>(circle_size(m, i) * circle_size(m, j));
    return make_rational(counts[k], pairs);
}

Rational triple_constant(const StructureTensor& t, std::uint32_t i, std::uint32_t j,
                         std::uint32_t k, std::uint32_t l) {
    Rational sum(0);
    for (std::uint32_t s = 0; s < t.order(); ++s) {
        if (t.multiplicity(i, j, s) == 0) continue;
        sum += t.constant(i, j, s) * t.constant(s, k, l);
    }
    return sum;
}

bool AxiomReport::all_passed() const {
    for (const auto* r : results())
        if (!r->passed) return false;
    return true;
}

namespace {

void fail(AxiomResult& r, std::vector<std::uint32_t> witness, std::string detail) {
    if (!r.passed) return;
    r.passed = false;
    r.witness = std::move(witness);
    r.detail = std::move(detail);
}

}  // namespace

AxiomReport validate_axioms(std::uint32_t order, const ConstantFn& constant) {
    const std::size_t n = order;
    std::vector<Rational> table(n * n * n);
    auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> const Rational& {
        return table[(i * n + j) * n + k];
    };
    for (std::uint32_t i = 0; i < order; ++i)
        for (std::uint32_t j = 0; j < order; ++j)
            for (std::uint32_t k = 0; k < order; ++k)
                table[(i * n + j) * n + k] = constant(i, j, k);

    AxiomReport report;
    for (std::uint32_t i = 0; i < order; ++i) {
        for (std::uint32_t j = 0; j < order; ++j) {
            Rational total(0);
            for (std::uint32_t k = 0; k < order; ++k) {
                const auto& c = at(i, j, k);
                if (sgn(c) < 0) fail(report.positivity, {i, j, k}, "n = " + to_string(c));
                if (c != at(j, i, k)) fail(report.commutativity, {i, j, k}, "n_ij^k != n_ji^k");
                total += c;
            }
            if (total != 1) fail(report.normalization, {i, j}, "sum_k n_ij^k = " + to_string(total));
            if (i != 0 && j != 0) {
                const bool reaches_unit = sgn(at(i, j, 0)) > 0;
                if (reaches_unit != (i == j)) {
                    fail(report.hermitian, {i, j},
                         reaches_unit ? "n_ij^0 > 0 with i != j" : "n_ii^0 = 0");
                }
            }
        }
    }

    // (c_i c_j) c_k against c_i (c_j c_k), one distribution over m at a time.
    std::vector<Rational> left(n);
    std::vector<Rational> right(n);
    for (std::uint32_t i = 0; i < order && report.associativity.passed; ++i) {
        for (std::uint32_t j = 0; j < order && report.associativity.passed; ++j) {
            for (std::uint32_t k = 0; k < order && report.associativity.passed; ++k) {
                std::fill(left.begin(), left.end(), Rational(0));
                std::fill(right.begin(), right.end(), Rational(0));
                for (std::size_t t = 0; t < n; ++t) {
                    const auto& a = at(i, j, t);
                    if (sgn(a) != 0)
                        for (std::size_t m = 0; m < n; ++m) left[m] += a * at(t, k, m);
                    const auto& b = at(j, k, t);
                    if (sgn(b) != 0)
                        for (std::size_t m = 0; m < n; ++m) right[m] += b * at(i, t, m);
                }
                for (std::uint32_t m = 0; m < order; ++m) {
                    if (left[m] != right[m]) {
                        fail(report.associativity, {i, j, k, m},
                             to_string(left[m]) + " != " + to_string(right[m]));
                        break;
                    }
                }
            }
        }
    }
    return report;
}

AxiomReport validate_axioms(const StructureTensor& t) {
    return validate_axioms(t.order(), [&t](std::uint32_t i, std::uint32_t j, std::uint32_t k) {
        return t.constant(i, j, k);
    });
}

void write_tensor_csv(std::ostream& out, const StructureTensor& t) {
    const auto p = t.order();
    out << "i,j,k,numerator,denominator\n";
    for (std::uint32_t i = 0; i < p; ++i) {
        for (std::uint32_t j = 0; j < p; ++j) {
            const auto den = (i == 0 || j == 0) ? 1U : p + 1;
            for (std::uint32_t k = 0; k < p; ++k) {
                out << i << ',' << j << ',' << k << ',' << unsigned{t.multiplicity(i, j, k)} << ','
                    << den << '\n';
            }
        }
    }
}

}  // namespace circlewalk
