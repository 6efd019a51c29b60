#pragma once

/**
 * Exact arithmetic in F_p and F_{p^2} = F_p(sqrt D).
 *
 * Residues are stored canonically in [0, p). Moduli are small (desk scale,
 * p well below 2^32) so a plain 64-bit product never overflows.
 */

#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

namespace oscdict {

using Residue = std::uint64_t;

/// True iff n is prime (trial division).
bool is_prime(std::uint64_t n);

/// Throws std::invalid_argument unless p is an odd prime > 3.
void require_odd_prime(std::uint64_t p);

/// Distinct prime divisors of n in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// base^exp mod m by square-and-multiply.
Residue pow_mod(Residue base, std::uint64_t exp, std::uint64_t m);

class FpElem {
public:
    FpElem(std::int64_t value, std::uint64_t p);

    Residue value() const noexcept { return value_; }
    std::uint64_t modulus() const noexcept { return p_; }
    bool is_zero() const noexcept { return value_ == 0; }

    FpElem operator+(const FpElem& o) const;
    FpElem operator-(const FpElem& o) const;
    FpElem operator*(const FpElem& o) const;
    FpElem operator-() const;
    FpElem operator/(const FpElem& o) const { return *this * o.inverse(); }

    /// Multiplicative inverse as a^(p-2); throws std::domain_error on zero.
    FpElem inverse() const;
    FpElem pow(std::uint64_t k) const;

    bool operator==(const FpElem& o) const noexcept = default;

    friend std::ostream& operator<<(std::ostream& os, const FpElem& a) { return os << a.value_; }

private:
    void check_same_field(const FpElem& o) const;

    Residue value_;
    std::uint64_t p_;
};

/// Legendre symbol of a: 0 for a = 0, +1 for nonzero squares, -1 otherwise.
int legendre(const FpElem& a);

/// Smallest positive non-square residue.
FpElem find_nonsquare(std::uint64_t p);

/// Smallest generator of F_p^*.
FpElem primitive_root(std::uint64_t p);

/// Smaller root of X^2 + 1 = 0. Throws std::domain_error when p = 3 mod 4.
FpElem sqrt_minus_one(std::uint64_t p);

/// Element x + sqrt(D)·y of F_{p^2}; D is a fixed non-square of F_p.
class Fp2Elem {
public:
    Fp2Elem(FpElem x, FpElem y, FpElem D);

    static Fp2Elem one(FpElem D);

    const FpElem& x() const noexcept { return x_; }
    const FpElem& y() const noexcept { return y_; }
    const FpElem& D() const noexcept { return D_; }
    bool is_zero() const noexcept { return x_.is_zero() && y_.is_zero(); }
    bool is_one() const noexcept { return x_.value() == 1 && y_.is_zero(); }

    Fp2Elem operator+(const Fp2Elem& o) const;
    Fp2Elem operator*(const Fp2Elem& o) const;

    /// Field norm x^2 - D y^2.
    FpElem norm() const { return x_ * x_ - D_ * y_ * y_; }
    /// Inverse via conjugate / norm; throws std::domain_error on zero.
    Fp2Elem inverse() const;

    bool operator==(const Fp2Elem& o) const noexcept = default;

private:
    FpElem x_, y_, D_;
};

Fp2Elem fp2_pow(const Fp2Elem& e, std::uint64_t k);

/// True iff e generates the full multiplicative group of order p^2 - 1.
bool is_primitive_fp2(const Fp2Elem& e);

/// First (s, t), t = 1..p-1 outer and s = 0..p-1 inner, with s + sqrt(D)·t
/// primitive in F_{p^2}.
std::pair<FpElem, FpElem> find_primitive_fp2(std::uint64_t p, const FpElem& D);

}  // namespace oscdict
