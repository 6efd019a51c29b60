#pragma once

/**
 * The Hilbert space C(F_p) and the unitary operators acting on it.
 *
 * Vectors are indexed by t in {0, ..., p-1}. The inner product is
 * <f, g> = sum_t f(t) conj(g(t)), conjugate-linear in the second slot.
 *
 * Operators are kept in structural form (shift, modulation, scaling, chirp,
 * Fourier, or a composition of those) and applied in O(p) or O(p^2). A dense
 * p x p realization is built on first request and cached.
 */

#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "oscdict/finite_field.hpp"
#include "oscdict/sl2.hpp"

namespace oscdict {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;
using CMatrix = Eigen::MatrixXcd;

/// Unit roots e^(2 pi i k / n) for k = 0..n-1.
std::vector<Complex> unit_roots(std::uint64_t n);

/// Additive and multiplicative characters of F_p.
class CharacterTable {
public:
    /// Uses the canonical (smallest) primitive root as alpha.
    explicit CharacterTable(std::uint64_t p);
    CharacterTable(std::uint64_t p, FpElem alpha);

    std::uint64_t p() const noexcept { return p_; }
    const FpElem& alpha() const noexcept { return alpha_; }

    /// chi(a) = e^(2 pi i a / p).
    Complex chi(std::int64_t a) const;
    /// psi_j(alpha^k) = e^(2 pi i j k / (p-1)); psi_j(0) = [j == 0].
    Complex psi(std::uint64_t j, std::int64_t a) const;
    /// Legendre character.
    int sigma(std::int64_t a) const;
    /// k with alpha^k = a, for a != 0.
    std::uint64_t dlog(std::int64_t a) const;

private:
    std::uint64_t reduce(std::int64_t a) const;

    std::uint64_t p_;
    FpElem alpha_;
    std::vector<Complex> add_roots_;   // e^(2 pi i k / p)
    std::vector<Complex> mult_roots_;  // e^(2 pi i k / (p-1))
    std::vector<std::uint64_t> dlog_;  // dlog_[a], a != 0
};

// Pointwise constructors over CVec. Scalar parameters must live in F_p with
// p = f.size().

/// (L_tau f)(t) = f(t + tau).
CVec time_shift(const FpElem& tau, const CVec& f);
/// (M_omega f)(t) = chi(omega t) f(t).
CVec modulation(const FpElem& omega, const CVec& f);
/// (S_a f)(t) = sigma(a) f(a^-1 t). Throws std::invalid_argument for a = 0.
CVec scale(const FpElem& a, const CVec& f);
/// (N_b f)(t) = chi(-2^-1 b t^2) f(t).
CVec chirp(const FpElem& b, const CVec& f);
/// (F f)(j) = p^(-1/2) sum_t chi(t j) f(t). Positive kernel sign.
CVec dft(const CVec& f);

/// Structural unitary operator on C(F_p).
class Operator {
public:
    struct TimeShift { Residue tau; };
    struct Modulation { Residue omega; };
    struct Scale { Residue a; };
    struct Chirp { Residue b; };
    struct Dft {};
    /// Factors listed left to right; the rightmost is applied first.
    struct Composition { std::vector<Operator> factors; };
    using Form = std::variant<TimeShift, Modulation, Scale, Chirp, Dft, Composition>;

    static Operator time_shift(const FpElem& tau);
    static Operator modulation(const FpElem& omega);
    static Operator scale(const FpElem& a);
    static Operator chirp(const FpElem& b);
    static Operator dft(std::uint64_t p);
    static Operator compose(std::vector<Operator> factors);

    std::uint64_t dim() const noexcept { return p_; }
    const Form& form() const noexcept { return *form_; }

    CVec apply(const CVec& f) const;
    CVec operator()(const CVec& f) const { return apply(f); }

    /// Dense realization; column t is apply(delta_t). Cached after the first call.
    const CMatrix& matrix() const;

private:
    Operator(std::uint64_t p, Form form);

    struct Cache {
        std::once_flag once;
        CMatrix dense;
    };

    std::uint64_t p_;
    std::shared_ptr<const Form> form_;
    std::shared_ptr<Cache> cache_;
};

/// Copy of the dense realization.
inline CMatrix as_matrix(const Operator& op) { return op.matrix(); }

/**
 * Weil representation via the Bruhat decomposition:
 *   b != 0:  rho(g) = S_b o N_{bd} o F o N_{a b^-1}
 *   b == 0:  rho(g) = S_a o N_{ac}
 * Agrees with a true representation only up to unimodular scalars.
 */
Operator rho(const SL2& g);

// Vector helpers.
Complex inner(const CVec& f, const CVec& g);
double norm(const CVec& f);
CVec delta(std::uint64_t p, std::uint64_t t);
CVec to_cvec(const Eigen::VectorXcd& v);
Eigen::VectorXcd to_eigen(const CVec& v);

}  // namespace oscdict
