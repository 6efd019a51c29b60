#include "oscdict/finite_field.hpp"

#include <stdexcept>
#include <string>

namespace oscdict {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

void require_odd_prime(std::uint64_t p) {
    if (p <= 3 || !is_prime(p)) {
        throw std::invalid_argument("p must be an odd prime > 3 (got " + std::to_string(p) + ")");
    }
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

Residue pow_mod(Residue base, std::uint64_t exp, std::uint64_t m) {
    Residue result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1u) result = result * base % m;
        base = base * base % m;
        exp >>= 1u;
    }
    return result;
}

// ---------------------------------------------------------------------------
// FpElem

FpElem::FpElem(std::int64_t value, std::uint64_t p) : p_(p) {
    if (p < 2) throw std::invalid_argument("modulus must be >= 2");
    const auto m = static_cast<std::int64_t>(p);
    std::int64_t r = value % m;
    if (r < 0) r += m;
    value_ = static_cast<Residue>(r);
}

void FpElem::check_same_field(const FpElem& o) const {
    if (p_ != o.p_) throw std::invalid_argument("mixed moduli in F_p arithmetic");
}

FpElem FpElem::operator+(const FpElem& o) const {
    check_same_field(o);
    return FpElem(static_cast<std::int64_t>((value_ + o.value_) % p_), p_);
}

FpElem FpElem::operator-(const FpElem& o) const {
    check_same_field(o);
    return FpElem(static_cast<std::int64_t>((value_ + p_ - o.value_) % p_), p_);
}

FpElem FpElem::operator*(const FpElem& o) const {
    check_same_field(o);
    return FpElem(static_cast<std::int64_t>(value_ * o.value_ % p_), p_);
}

FpElem FpElem::operator-() const {
    return FpElem(static_cast<std::int64_t>((p_ - value_) % p_), p_);
}

FpElem FpElem::inverse() const {
    if (value_ == 0) throw std::domain_error("zero has no inverse in F_p");
    return pow(p_ - 2);
}

FpElem FpElem::pow(std::uint64_t k) const {
    return FpElem(static_cast<std::int64_t>(pow_mod(value_, k, p_)), p_);
}

// ---------------------------------------------------------------------------
// Number-theoretic searches

int legendre(const FpElem& a) {
    if (a.is_zero()) return 0;
    const Residue r = pow_mod(a.value(), (a.modulus() - 1) / 2, a.modulus());
    return r == 1 ? 1 : -1;
}

FpElem find_nonsquare(std::uint64_t p) {
    require_odd_prime(p);
    for (std::uint64_t d = 2; d < p; ++d) {
        FpElem cand(static_cast<std::int64_t>(d), p);
        if (legendre(cand) == -1) return cand;
    }
    throw std::logic_error("no non-square found");
}

FpElem primitive_root(std::uint64_t p) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("primitive_root needs an odd prime");
    const auto factors = prime_factors(p - 1);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool generator = true;
        for (auto q : factors) {
            if (pow_mod(g, (p - 1) / q, p) == 1) {
                generator = false;
                break;
            }
        }
        if (generator) return FpElem(static_cast<std::int64_t>(g), p);
    }
    throw std::logic_error("no primitive root found");
}

FpElem sqrt_minus_one(std::uint64_t p) {
    require_odd_prime(p);
    if (p % 4 != 1) throw std::domain_error("-1 is not a square when p = 3 mod 4");
    for (std::uint64_t x = 1; x < p; ++x) {
        if (x * x % p == p - 1) return FpElem(static_cast<std::int64_t>(x), p);
    }
    throw std::logic_error("no square root of -1 found");
}

// ---------------------------------------------------------------------------
// Fp2Elem

Fp2Elem::Fp2Elem(FpElem x, FpElem y, FpElem D) : x_(x), y_(y), D_(D) {
    if (x_.modulus() != D_.modulus() || y_.modulus() != D_.modulus()) {
        throw std::invalid_argument("mixed moduli in F_{p^2} element");
    }
}

Fp2Elem Fp2Elem::one(FpElem D) {
    const auto p = D.modulus();
    return Fp2Elem(FpElem(1, p), FpElem(0, p), D);
}

Fp2Elem Fp2Elem::operator+(const Fp2Elem& o) const {
    return Fp2Elem(x_ + o.x_, y_ + o.y_, D_);
}

Fp2Elem Fp2Elem::operator*(const Fp2Elem& o) const {
    if (!(D_ == o.D_)) throw std::invalid_argument("mixed extensions in F_{p^2} product");
    return Fp2Elem(x_ * o.x_ + D_ * y_ * o.y_, x_ * o.y_ + o.x_ * y_, D_);
}

Fp2Elem Fp2Elem::inverse() const {
    if (is_zero()) throw std::domain_error("zero has no inverse in F_{p^2}");
    const FpElem n_inv = norm().inverse();
    return Fp2Elem(x_ * n_inv, -y_ * n_inv, D_);
}

Fp2Elem fp2_pow(const Fp2Elem& e, std::uint64_t k) {
    Fp2Elem result = Fp2Elem::one(e.D());
    Fp2Elem base = e;
    while (k > 0) {
        if (k & 1u) result = result * base;
        base = base * base;
        k >>= 1u;
    }
    return result;
}

bool is_primitive_fp2(const Fp2Elem& e) {
    if (e.is_zero()) return false;
    const std::uint64_t p = e.D().modulus();
    const std::uint64_t order = p * p - 1;
    for (auto q : prime_factors(order)) {
        if (fp2_pow(e, order / q).is_one()) return false;
    }
    return true;
}

std::pair<FpElem, FpElem> find_primitive_fp2(std::uint64_t p, const FpElem& D) {
    require_odd_prime(p);
    if (D.modulus() != p || legendre(D) != -1) {
        throw std::invalid_argument("D must be a non-square of F_p");
    }
    for (std::uint64_t t = 1; t < p; ++t) {
        for (std::uint64_t s = 0; s < p; ++s) {
            const FpElem fs(static_cast<std::int64_t>(s), p);
            const FpElem ft(static_cast<std::int64_t>(t), p);
            if (is_primitive_fp2(Fp2Elem(fs, ft, D))) return {fs, ft};
        }
    }
    throw std::logic_error("internal error: no primitive element of F_{p^2} found");
}

}  // namespace oscdict
