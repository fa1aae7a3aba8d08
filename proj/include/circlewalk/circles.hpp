#pragma once

/**
 * @file circles.hpp
 * @brief The hypergroup of origin-centred circles in F_p x F_p.
 *
 * Circle C_k is the set of points (x, y) with x^2 + y^2 = k. For p = 3 (mod 4)
 * |C_0| = 1 and |C_k| = p + 1 otherwise. Taking a uniform step from C_i and
 * then a uniform step from C_j lands on C_k with probability n_ij^k; these
 * structure constants have a closed form driven by whether
 *
 *     V = ij - (k - i - j)^2 / 4
 *
 * is zero, a nonzero square, or a non-square in F_p.
 *
 * StructureTensor evaluates the closed form; structure_constant_bruteforce
 * counts point pairs directly and is used as the independent check.
 */

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "circlewalk/modular.hpp"
#include "circlewalk/rational.hpp"

namespace circlewalk {

struct Point {
    std::uint32_t x = 0;
    std::uint32_t y = 0;

    auto operator<=>(const Point&) const = default;
};

struct CirclePointSet {
    std::uint32_t k = 0;
    std::vector<Point> points;  // sorted by (x, y), no duplicates
};

std::uint32_t quadrance(const PrimeModulus& m, Point pt);

/// All points of C_k, sorted lexicographically.
CirclePointSet circle_points(const PrimeModulus& m, std::uint32_t k);

/// 1 for k = 0, p + 1 otherwise.
std::uint64_t circle_size(const PrimeModulus& m, std::uint32_t k);

class StructureTensor {
public:
    /// Largest p for which the dense multiplicity cache may be built.
    static constexpr std::uint32_t kDenseCacheLimit = 512;

    explicit StructureTensor(PrimeModulus m, bool dense_cache = false);

    const PrimeModulus& modulus() const noexcept { return modulus_; }
    std::uint32_t order() const noexcept { return modulus_.value(); }
    bool has_cache() const noexcept { return !cache_.empty(); }

    /// n_ij^k in units of 1/(p+1) when i, j != 0 (so 0, 1 or 2), and in
    /// units of 1 when either index is zero (so 0 or 1).
    std::uint8_t multiplicity(std::uint32_t i, std::uint32_t j, std::uint32_t k) const;

    /// The raw pair count N_ij^k = n_ij^k |C_i| |C_j|.
    std::int64_t raw_count(std::uint32_t i, std::uint32_t j, std::uint32_t k) const;

    /// The exact constant n_ij^k. Throws IndexOutOfRange.
    Rational constant(std::uint32_t i, std::uint32_t j, std::uint32_t k) const;

private:
    std::uint8_t evaluate(std::uint32_t i, std::uint32_t j, std::uint32_t k) const;
    void check_indices(std::uint32_t i, std::uint32_t j, std::uint32_t k) const;

    PrimeModulus modulus_;
    std::uint32_t inv4_;
    std::vector<std::uint8_t> cache_;
};

inline Rational structure_constant(const StructureTensor& t, std::uint32_t i, std::uint32_t j,
                                   std::uint32_t k) {
    return t.constant(i, j, k);
}

/// Histogram of quadrance(a + b) over all (a, b) in C_i x C_j, indexed by k.
std::vector<std::int64_t> bruteforce_counts(const PrimeModulus& m, std::uint32_t i,
                                            std::uint32_t j);

/// N_ij^k / (|C_i| |C_j|) by direct enumeration of point pairs.
Rational structure_constant_bruteforce(const PrimeModulus& m, std::uint32_t i, std::uint32_t j,
                                       std::uint32_t k);

/// alpha_ijk^l = sum_t n_ij^t n_tk^l, the C_i, C_j, C_k three-step constant.
Rational triple_constant(const StructureTensor& t, std::uint32_t i, std::uint32_t j,
                         std::uint32_t k, std::uint32_t l);

inline bool triple_support(const StructureTensor& t, std::uint32_t i, std::uint32_t j,
                           std::uint32_t k, std::uint32_t l) {
    return sgn(triple_constant(t, i, j, k, l)) > 0;
}

struct AxiomResult {
    std::string name;
    bool passed = true;
    std::vector<std::uint32_t> witness;  // first failing index tuple
    std::string detail;
};

struct AxiomReport {
    AxiomResult positivity{"positivity", true, {}, {}};
    AxiomResult normalization{"normalization", true, {}, {}};
    AxiomResult commutativity{"commutativity", true, {}, {}};
    AxiomResult hermitian{"hermitian_support", true, {}, {}};
    AxiomResult associativity{"associativity", true, {}, {}};

    std::array<const AxiomResult*, 5> results() const {
        return {&positivity, &normalization, &commutativity, &hermitian, &associativity};
    }
    bool all_passed() const;
};

using ConstantFn = std::function<Rational(std::uint32_t, std::uint32_t, std::uint32_t)>;

/// Exhaustive exact check of the hypergroup axioms for an arbitrary table
/// of constants over `order` elements (element 0 is the unit). Cost is
/// O(order^5) rational operations for associativity.
AxiomReport validate_axioms(std::uint32_t order, const ConstantFn& constant);

AxiomReport validate_axioms(const StructureTensor& t);

/// CSV rows `i,j,k,numerator,denominator`. Constants with both indices
/// nonzero are written over the denominator p+1; identity rows over 1.
void write_tensor_csv(std::ostream& out, const StructureTensor& t);

}  // namespace circlewalk
