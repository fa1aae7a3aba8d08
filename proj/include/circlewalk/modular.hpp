#pragma once

/**
 * @file modular.hpp
 * @brief Arithmetic in the prime field F_p for primes p = 3 (mod 4).
 *
 * A PrimeModulus is validated once (trial division, residue class) and
 * carries a quadratic-residue table so that classifying an element is a
 * single lookup. Square roots use the exponent shortcut a^((p+1)/4), which
 * is only valid because p = 3 (mod 4).
 */

#include <cstdint>
#include <memory>
#include <vector>

namespace circlewalk {

enum class Residue : std::uint8_t { zero, square, nonsquare };

class PrimeModulus {
public:
    /// Throws NotPrime / WrongResidueClass.
    static PrimeModulus make(std::int64_t n);

    std::uint32_t value() const noexcept { return p_; }

    Residue classify(std::uint32_t a) const { return (*table_)[a % p_]; }

    /// Number of nonzero squares; always (p-1)/2.
    std::uint32_t square_count() const noexcept { return (p_ - 1) / 2; }

    std::uint32_t reduce(std::int64_t a) const noexcept {
        const auto m = static_cast<std::int64_t>(p_);
        auto r = a % m;
        return static_cast<std::uint32_t>(r < 0 ? r + m : r);
    }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
        return static_cast<std::uint32_t>((std::uint64_t{a} + b) % p_);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
        return static_cast<std::uint32_t>((std::uint64_t{a} + p_ - b % p_) % p_);
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
        return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p_);
    }
    std::uint32_t pow(std::uint32_t base, std::uint64_t exp) const noexcept;

    /// Throws DivisionByZero for a = 0.
    std::uint32_t inverse(std::uint32_t a) const;

    /// Canonical root min(s, p - s) with s = a^((p+1)/4). Throws NotASquare.
    std::uint32_t sqrt(std::uint32_t a) const;

    bool operator==(const PrimeModulus& other) const noexcept { return p_ == other.p_; }

private:
    PrimeModulus(std::uint32_t p, std::shared_ptr<const std::vector<Residue>> table)
        : p_(p), table_(std::move(table)) {}

    std::uint32_t p_;
    std::shared_ptr<const std::vector<Residue>> table_;
};

inline PrimeModulus make_modulus(std::int64_t n) { return PrimeModulus::make(n); }

/// Deterministic trial division.
bool is_prime(std::int64_t n) noexcept;

/// An element of F_p. Holds a pointer to its modulus, which must outlive it.
class Fp {
public:
    Fp(const PrimeModulus& m, std::int64_t v) : value_(m.reduce(v)), modulus_(&m) {}

    std::uint32_t value() const noexcept { return value_; }
    const PrimeModulus& modulus() const noexcept { return *modulus_; }

    friend Fp operator+(Fp a, Fp b) { return {*a.modulus_, a.modulus_->add(a.value_, b.value_)}; }
    friend Fp operator-(Fp a, Fp b) { return {*a.modulus_, a.modulus_->sub(a.value_, b.value_)}; }
    friend Fp operator*(Fp a, Fp b) { return {*a.modulus_, a.modulus_->mul(a.value_, b.value_)}; }
    friend bool operator==(Fp a, Fp b) noexcept { return a.value_ == b.value_; }

private:
    std::uint32_t value_;
    const PrimeModulus* modulus_;
};

Residue is_square(Fp a);
Fp sqrt_mod(Fp a);
Fp inv_mod(Fp a);

}  // namespace circlewalk
