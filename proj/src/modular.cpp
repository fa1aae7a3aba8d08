#include "circlewalk/modular.hpp"

#include <limits>
#include <string>

#include "circlewalk/errors.hpp"

namespace circlewalk {

bool is_prime(std::int64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

PrimeModulus PrimeModulus::make(std::int64_t n) {
    // Products of two residues must fit in 64 bits.
    if (n > std::numeric_limits<std::int32_t>::max()) {
        throw NotPrime("modulus " + std::to_string(n) + " is out of the supported range");
    }
    if (!is_prime(n)) {
        throw NotPrime(std::to_string(n) + " is not prime");
    }
    if (n % 4 != 3) {
        throw WrongResidueClass(std::to_string(n) + " is not congruent to 3 mod 4");
    }
    const auto p = static_cast<std::uint32_t>(n);
    auto table = std::make_shared<std::vector<Residue>>(p, Residue::nonsquare);
    (*table)[0] = Residue::zero;
    for (std::uint64_t a = 1; a < p; ++a) {
        (*table)[(a * a) % p] = Residue::square;
    }
    return PrimeModulus(p, std::move(table));
}

std::uint32_t PrimeModulus::pow(std::uint32_t base, std::uint64_t exp) const noexcept {
    std::uint64_t result = 1 % p_;
    std::uint64_t b = base % p_;
    while (exp > 0) {
        if (exp & 1U) result = (result * b) % p_;
        b = (b * b) % p_;
        exp >>= 1U;
    }
    return static_cast<std::uint32_t>(result);
}

std::uint32_t PrimeModulus::inverse(std::uint32_t a) const {
    a %= p_;
    if (a == 0) throw DivisionByZero("inverse of zero mod " + std::to_string(p_));
    return pow(a, p_ - 2);
}

std::uint32_t PrimeModulus::sqrt(std::uint32_t a) const {
    a %= p_;
    if (classify(a) == Residue::nonsquare) {
        throw NotASquare(std::to_string(a) + " is not a square mod " + std::to_string(p_));
    }
    const auto s = pow(a, (std::uint64_t{p_} + 1) / 4);
    const auto t = (p_ - s) % p_;
    return s < t ? s : t;
}

Residue is_square(Fp a) { return a.modulus().classify(a.value()); }

Fp sqrt_mod(Fp a) { return {a.modulus(), a.modulus().sqrt(a.value())}; }

Fp inv_mod(Fp a) { return {a.modulus(), a.modulus().inverse(a.value())}; }

}  // namespace circlewalk
