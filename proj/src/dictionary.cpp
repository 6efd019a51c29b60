#include "oscdict/dictionary.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace oscdict {

namespace {

constexpr std::string_view kSplitOrdering = "split: x outer, then y, then z";
constexpr std::string_view kNonsplitOrdering =
    "nonsplit: coset rep (a, c, weyl) outer, eigenvalue index k inner";

std::int64_t s64(Residue r) { return static_cast<std::int64_t>(r); }

}  // namespace

std::string_view to_string(DictKind kind) {
    switch (kind) {
        case DictKind::split: return "split";
        case DictKind::nonsplit: return "nonsplit";
        case DictKind::both: return "both";
    }
    return "unknown";
}

DictKind parse_dict_kind(std::string_view s) {
    if (s == "split") return DictKind::split;
    if (s == "nonsplit") return DictKind::nonsplit;
    if (s == "both") return DictKind::both;
    throw std::invalid_argument("unknown dictionary kind: " + std::string(s));
}

std::uint64_t dictionary_size(std::uint64_t p, TorusKind kind) {
    return kind == TorusKind::split ? p * (p + 1) * (p - 2) / 2 : p * p * (p - 1) / 2;
}

std::uint64_t dictionary_size(std::uint64_t p, DictKind kind) {
    switch (kind) {
        case DictKind::split: return dictionary_size(p, TorusKind::split);
        case DictKind::nonsplit: return dictionary_size(p, TorusKind::nonsplit);
        case DictKind::both:
            return dictionary_size(p, TorusKind::split) + dictionary_size(p, TorusKind::nonsplit);
    }
    return 0;
}

CVec phase_normalize(const CVec& v) {
    for (const auto& z : v) {
        const double r = std::abs(z);
        if (r > kPhaseFloor) {
            const Complex unit = std::conj(z) / r;
            CVec out(v.size());
            for (std::size_t t = 0; t < v.size(); ++t) out[t] = unit * v[t];
            return out;
        }
    }
    throw std::invalid_argument("cannot phase-normalize the zero vector");
}

// ---------------------------------------------------------------------------
// Split dictionary

std::vector<CVec> split_basis(const CharacterTable& chars) {
    const auto p = chars.p();
    const double s = 1.0 / std::sqrt(static_cast<double>(p - 1));
    std::vector<CVec> basis;
    for (std::uint64_t x = 1; x <= p - 2; ++x) {
        CVec v(p);
        for (std::uint64_t t = 0; t < p; ++t) v[t] = s * chars.psi(x, s64(t));
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<CVec> split_basis(std::uint64_t p) {
    require_odd_prime(p);
    return split_basis(CharacterTable(p));
}

CVec split_closed_form(const CharacterTable& chars, std::uint64_t x, std::uint64_t y, std::uint64_t z) {
    const auto p = chars.p();
    if (x < 1 || x > p - 2) throw std::invalid_argument("x must lie in [1, p-2]");
    if (y >= p) throw std::invalid_argument("y must lie in [0, p-1]");
    if (z > (p - 1) / 2) throw std::invalid_argument("z must lie in [0, (p-1)/2]");

    CVec phi(p);
    if (z == 0) {
        const double s = 1.0 / std::sqrt(static_cast<double>(p - 1));
        for (std::uint64_t t = 0; t < p; ++t) {
            phi[t] = s * chars.psi(x, s64(t)) * chars.chi(s64(y * t % p * t % p));
        }
    } else {
        const double s = 1.0 / std::sqrt(static_cast<double>(p * (p - 1)));
        // -(2z)^-1
        const Residue coeff = (-(FpElem(s64(2 * z), p).inverse())).value();
        for (std::uint64_t t = 0; t < p; ++t) {
            Complex acc(0.0, 0.0);
            for (std::uint64_t j = 1; j < p; ++j) {
                const Residue diff = (j + p - t) % p;
                acc += chars.psi(x, s64(j)) * chars.chi(s64(coeff * (diff * diff % p) % p));
            }
            phi[t] = chars.chi(s64(y * t % p * t % p)) * s * acc;
        }
    }
    return phase_normalize(phi);
}

CVec split_closed_form(std::uint64_t p, std::uint64_t x, std::uint64_t y, std::uint64_t z) {
    require_odd_prime(p);
    return split_closed_form(CharacterTable(p), x, y, z);
}

Dictionary gen_split_dict(std::uint64_t p) {
    require_odd_prime(p);
    const CharacterTable chars(p);
    Dictionary dict;
    dict.meta.p = p;
    dict.meta.kind = DictKind::split;
    dict.meta.alpha = chars.alpha().value();
    dict.meta.ordering = std::string(kSplitOrdering);
    dict.entries.reserve(dictionary_size(p, TorusKind::split));
    for (std::uint64_t x = 1; x <= p - 2; ++x) {
        for (std::uint64_t y = 0; y < p; ++y) {
            for (std::uint64_t z = 0; z <= (p - 1) / 2; ++z) {
                dict.entries.push_back({split_closed_form(chars, x, y, z), TorusKind::split, x, SplitRep{y, z}});
            }
        }
    }
    return dict;
}

// ---------------------------------------------------------------------------
// Non-split dictionary

NonsplitBasis nonsplit_basis(std::uint64_t p, const FpElem& D, const FpElem& s, const FpElem& t) {
    require_odd_prime(p);
    const SL2 gD = build_gD(p, D, s, t);
    const CMatrix U = as_matrix(rho(gD));
    const auto n = static_cast<Eigen::Index>(p);
    const std::uint64_t order = p + 1;

    std::vector<CMatrix> powers;
    powers.reserve(order + 1);
    powers.push_back(CMatrix::Identity(n, n));
    for (std::uint64_t m = 1; m <= order; ++m) powers.push_back(powers.back() * U);

    // U^(p+1) is a scalar multiple of the identity.
    const Complex c = powers[order](0, 0);
    const CMatrix deviation = powers[order] - c * CMatrix::Identity(n, n);
    if (deviation.cwiseAbs().maxCoeff() > kProjectiveScalarTol) {
        throw std::runtime_error("rho(g_D)^(p+1) is not a scalar multiple of the identity");
    }
    const Complex mu = std::polar(std::pow(std::abs(c), 1.0 / static_cast<double>(order)),
                                  std::arg(c) / static_cast<double>(order));

    const auto zeta = unit_roots(order);
    std::vector<CMatrix> normalized(order);
    Complex mu_pow(1.0, 0.0);
    for (std::uint64_t m = 0; m < order; ++m) {
        normalized[m] = powers[m] / mu_pow;
        mu_pow *= mu;
    }

    NonsplitBasis basis{D, s, t, gD, c, mu, order, {}, {}};
    std::uint64_t rank_zero = 0;
    for (std::uint64_t k = 0; k < order; ++k) {
        CMatrix P = CMatrix::Zero(n, n);
        for (std::uint64_t m = 0; m < order; ++m) {
            P += std::conj(zeta[k * m % order]) * normalized[m];
        }
        P /= static_cast<double>(order);
        const double frob = P.norm();
        basis.projection_norms.push_back(frob);

        if (frob < kRankZeroThreshold) {
            ++rank_zero;
            basis.excluded_k = k;
            continue;
        }
        if (frob <= kRankOneThreshold) {
            throw std::runtime_error("character projection " + std::to_string(k) +
                                     " has intermediate Frobenius norm " + std::to_string(frob));
        }
        Eigen::Index col = 0;
        P.colwise().norm().maxCoeff(&col);
        Eigen::VectorXcd v = P.col(col);
        v.normalize();
        basis.pairs.push_back({k, mu * zeta[k], phase_normalize(to_cvec(v))});
    }
    if (rank_zero != 1 || basis.pairs.size() != p) {
        throw std::runtime_error("character projections do not have the rank pattern (p ones, one zero)");
    }
    return basis;
}

NonsplitBasis nonsplit_basis(std::uint64_t p, const FpElem& D) {
    const auto [s, t] = find_primitive_fp2(p, D);
    return nonsplit_basis(p, D, s, t);
}

SL2 nonsplit_rep_matrix(std::uint64_t p, const NonsplitRep& rep) {
    const FpElem a(s64(rep.a), p);
    const SL2 lower(s64(rep.a), 0, s64(rep.c), s64(a.inverse().value()), p);
    return rep.weyl ? lower * SL2::weyl(p) : lower;
}

Dictionary gen_nonsplit_dict(std::uint64_t p, std::optional<FpElem> D_opt) {
    require_odd_prime(p);
    const FpElem D = D_opt.value_or(find_nonsquare(p));
    const NonsplitBasis basis = nonsplit_basis(p, D);
    const CosetReps reps = coset_reps_nonsplit(p, D);

    std::vector<CVec> fourier_basis;
    fourier_basis.reserve(basis.pairs.size());
    for (const auto& pair : basis.pairs) fourier_basis.push_back(dft(pair.vector));

    Dictionary dict;
    dict.meta.p = p;
    dict.meta.kind = DictKind::nonsplit;
    dict.meta.alpha = primitive_root(p).value();
    dict.meta.D = D.value();
    dict.meta.s = basis.s.value();
    dict.meta.t = basis.t.value();
    dict.meta.c_scalar = basis.c_scalar;
    dict.meta.excluded_char = basis.excluded_k;
    dict.meta.ordering = std::string(kNonsplitOrdering);
    dict.entries.reserve(dictionary_size(p, TorusKind::nonsplit));

    for (const auto& rep : reps.reps) {
        const FpElem a(s64(rep.first), p);
        const FpElem c(s64(rep.second), p);
        // S_a o N_{ac}
        const Operator lift = Operator::compose({Operator::scale(a), Operator::chirp(a * c)});
        for (std::size_t i = 0; i < basis.pairs.size(); ++i) {
            const CVec& source = rep.weyl ? fourier_basis[i] : basis.pairs[i].vector;
            dict.entries.push_back({phase_normalize(lift(source)), TorusKind::nonsplit, basis.pairs[i].k,
                                    NonsplitRep{rep.first, rep.second, rep.weyl}});
        }
    }
    return dict;
}

Dictionary gen_dictionary(std::uint64_t p, DictKind kind, std::optional<FpElem> D) {
    switch (kind) {
        case DictKind::split: return gen_split_dict(p);
        case DictKind::nonsplit: return gen_nonsplit_dict(p, D);
        case DictKind::both: {
            Dictionary dict = gen_split_dict(p);
            Dictionary ns = gen_nonsplit_dict(p, D);
            dict.meta = ns.meta;
            dict.meta.kind = DictKind::both;
            dict.meta.ordering = std::string(kSplitOrdering) + "; then " + std::string(kNonsplitOrdering);
            dict.entries.insert(dict.entries.end(), std::make_move_iterator(ns.entries.begin()),
                                std::make_move_iterator(ns.entries.end()));
            return dict;
        }
    }
    throw std::invalid_argument("unknown dictionary kind");
}

}  // namespace oscdict
