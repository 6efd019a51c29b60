#include "oscdict/weil_rep.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oscdict {

namespace {

std::uint64_t checked_dim(const FpElem& param, const CVec& f) {
    if (param.modulus() != f.size()) {
        throw std::invalid_argument("operator parameter modulus does not match vector length");
    }
    return f.size();
}

std::int64_t as_signed(Residue r) { return static_cast<std::int64_t>(r); }

}  // namespace

std::vector<Complex> unit_roots(std::uint64_t n) {
    std::vector<Complex> roots(n);
    for (std::uint64_t k = 0; k < n; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        roots[k] = Complex(std::cos(angle), std::sin(angle));
    }
    return roots;
}

// ---------------------------------------------------------------------------
// CharacterTable

CharacterTable::CharacterTable(std::uint64_t p) : CharacterTable(p, primitive_root(p)) {}

CharacterTable::CharacterTable(std::uint64_t p, FpElem alpha)
    : p_(p), alpha_(alpha), add_roots_(unit_roots(p)), mult_roots_(unit_roots(p - 1)), dlog_(p, 0) {
    if (alpha.modulus() != p) throw std::invalid_argument("alpha must live in F_p");
    Residue x = 1;
    for (std::uint64_t k = 0; k + 1 < p; ++k) {
        if (k > 0 && x == 1) throw std::invalid_argument("alpha is not a generator of F_p^*");
        dlog_[x] = k;
        x = x * alpha.value() % p;
    }
}

std::uint64_t CharacterTable::reduce(std::int64_t a) const {
    return FpElem(a, p_).value();
}

Complex CharacterTable::chi(std::int64_t a) const { return add_roots_[reduce(a)]; }

Complex CharacterTable::psi(std::uint64_t j, std::int64_t a) const {
    const auto r = reduce(a);
    if (r == 0) return j % (p_ - 1) == 0 ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
    return mult_roots_[(j % (p_ - 1)) * dlog_[r] % (p_ - 1)];
}

int CharacterTable::sigma(std::int64_t a) const { return legendre(FpElem(a, p_)); }

std::uint64_t CharacterTable::dlog(std::int64_t a) const {
    const auto r = reduce(a);
    if (r == 0) throw std::domain_error("discrete log of zero");
    return dlog_[r];
}

// ---------------------------------------------------------------------------
// Pointwise operators

CVec time_shift(const FpElem& tau, const CVec& f) {
    const auto p = checked_dim(tau, f);
    CVec out(p);
    for (std::uint64_t t = 0; t < p; ++t) out[t] = f[(t + tau.value()) % p];
    return out;
}

CVec modulation(const FpElem& omega, const CVec& f) {
    const auto p = checked_dim(omega, f);
    const auto roots = unit_roots(p);
    CVec out(p);
    for (std::uint64_t t = 0; t < p; ++t) out[t] = roots[omega.value() * t % p] * f[t];
    return out;
}

CVec scale(const FpElem& a, const CVec& f) {
    const auto p = checked_dim(a, f);
    if (a.is_zero()) throw std::invalid_argument("scale parameter must be nonzero");
    const double sign = legendre(a);
    const Residue a_inv = a.inverse().value();
    CVec out(p);
    for (std::uint64_t t = 0; t < p; ++t) out[t] = sign * f[a_inv * t % p];
    return out;
}

CVec chirp(const FpElem& b, const CVec& f) {
    const auto p = checked_dim(b, f);
    const auto roots = unit_roots(p);
    // -2^-1 b
    const Residue coeff = (-(FpElem(2, p).inverse() * b)).value();
    CVec out(p);
    for (std::uint64_t t = 0; t < p; ++t) out[t] = roots[coeff * (t * t % p) % p] * f[t];
    return out;
}

CVec dft(const CVec& f) {
    const auto p = static_cast<std::uint64_t>(f.size());
    const auto roots = unit_roots(p);
    const double s = 1.0 / std::sqrt(static_cast<double>(p));
    CVec out(p);
    for (std::uint64_t j = 0; j < p; ++j) {
        Complex acc(0.0, 0.0);
        for (std::uint64_t t = 0; t < p; ++t) acc += roots[t * j % p] * f[t];
        out[j] = s * acc;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(std::uint64_t p, Form form)
    : p_(p), form_(std::make_shared<const Form>(std::move(form))), cache_(std::make_shared<Cache>()) {}

Operator Operator::time_shift(const FpElem& tau) { return Operator(tau.modulus(), TimeShift{tau.value()}); }
Operator Operator::modulation(const FpElem& omega) {
    return Operator(omega.modulus(), Modulation{omega.value()});
}
Operator Operator::scale(const FpElem& a) {
    if (a.is_zero()) throw std::invalid_argument("scale parameter must be nonzero");
    return Operator(a.modulus(), Scale{a.value()});
}
Operator Operator::chirp(const FpElem& b) { return Operator(b.modulus(), Chirp{b.value()}); }
Operator Operator::dft(std::uint64_t p) { return Operator(p, Dft{}); }

Operator Operator::compose(std::vector<Operator> factors) {
    if (factors.empty()) throw std::invalid_argument("empty composition");
    const auto p = factors.front().dim();
    for (const auto& op : factors) {
        if (op.dim() != p) throw std::invalid_argument("composition of operators on different spaces");
    }
    return Operator(p, Composition{std::move(factors)});
}

CVec Operator::apply(const CVec& f) const {
    if (f.size() != p_) throw std::invalid_argument("vector length does not match operator dimension");
    const auto p = p_;
    const auto elem = [p](Residue r) { return FpElem(as_signed(r), p); };
    return std::visit(
        [&](const auto& form) -> CVec {
            using T = std::decay_t<decltype(form)>;
            if constexpr (std::is_same_v<T, TimeShift>) {
                return oscdict::time_shift(elem(form.tau), f);
            } else if constexpr (std::is_same_v<T, Modulation>) {
                return oscdict::modulation(elem(form.omega), f);
            } else if constexpr (std::is_same_v<T, Scale>) {
                return oscdict::scale(elem(form.a), f);
            } else if constexpr (std::is_same_v<T, Chirp>) {
                return oscdict::chirp(elem(form.b), f);
            } else if constexpr (std::is_same_v<T, Dft>) {
                return oscdict::dft(f);
            } else {
                CVec v = f;
                for (auto it = form.factors.rbegin(); it != form.factors.rend(); ++it) v = it->apply(v);
                return v;
            }
        },
        *form_);
}

const CMatrix& Operator::matrix() const {
    std::call_once(cache_->once, [this] {
        CMatrix m(p_, p_);
        if (const auto* comp = std::get_if<Composition>(form_.get())) {
            m = CMatrix::Identity(p_, p_);
            for (const auto& factor : comp->factors) m = m * factor.matrix();
        } else {
            for (std::uint64_t t = 0; t < p_; ++t) {
                const CVec col = apply(delta(p_, t));
                for (std::uint64_t r = 0; r < p_; ++r) m(r, t) = col[r];
            }
        }
        cache_->dense = std::move(m);
    });
    return cache_->dense;
}

Operator rho(const SL2& g) {
    const auto p = g.modulus();
    if (g.b() != 0) {
        const FpElem b = g.eb();
        return Operator::compose({Operator::scale(b), Operator::chirp(b * g.ed()), Operator::dft(p),
                                  Operator::chirp(g.ea() * b.inverse())});
    }
    const FpElem a = g.ea();
    return Operator::compose({Operator::scale(a), Operator::chirp(a * g.ec())});
}

// ---------------------------------------------------------------------------
// Vector helpers

Complex inner(const CVec& f, const CVec& g) {
    if (f.size() != g.size()) throw std::invalid_argument("inner product of vectors of different length");
    Complex acc(0.0, 0.0);
    for (std::size_t t = 0; t < f.size(); ++t) acc += f[t] * std::conj(g[t]);
    return acc;
}

double norm(const CVec& f) {
    double acc = 0.0;
    for (const auto& z : f) acc += std::norm(z);
    return std::sqrt(acc);
}

CVec delta(std::uint64_t p, std::uint64_t t) {
    CVec v(p, Complex(0.0, 0.0));
    v.at(t) = Complex(1.0, 0.0);
    return v;
}

CVec to_cvec(const Eigen::VectorXcd& v) { return CVec(v.data(), v.data() + v.size()); }

Eigen::VectorXcd to_eigen(const CVec& v) {
    return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace oscdict
