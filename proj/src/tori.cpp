#include "oscdict/tori.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace oscdict {

namespace {

std::int64_t s64(Residue r) { return static_cast<std::int64_t>(r); }

void require_nonsquare(std::uint64_t p, const FpElem& D) {
    if (D.modulus() != p || legendre(D) != -1) {
        throw std::invalid_argument("D must be a non-square of F_p");
    }
}

}  // namespace

std::string_view to_string(TorusKind kind) {
    return kind == TorusKind::split ? "split" : "nonsplit";
}

std::uint64_t torus_count(std::uint64_t p, TorusKind kind) {
    return kind == TorusKind::split ? p * (p + 1) / 2 : p * (p - 1) / 2;
}

std::vector<SL2> enumerate_TD(std::uint64_t p, const FpElem& D) {
    require_nonsquare(p, D);
    std::vector<SL2> out;
    for (std::uint64_t x = 0; x < p; ++x) {
        for (std::uint64_t y = 0; y < p; ++y) {
            const FpElem fx(s64(x), p), fy(s64(y), p);
            if ((fx * fx - D * fy * fy).value() == 1) {
                out.emplace_back(s64(x), s64(y), s64((D * fy).value()), s64(x), p);
            }
        }
    }
    return out;
}

SL2 build_gD(std::uint64_t p, const FpElem& D, const FpElem& s, const FpElem& t) {
    require_nonsquare(p, D);
    const FpElem denom = s * s - D * t * t;
    if (denom.is_zero()) throw std::invalid_argument("s^2 - D t^2 vanishes");
    const FpElem inv = denom.inverse();
    const FpElem u = (s * s + D * t * t) * inv;
    const FpElem v = -(FpElem(2, p) * s * t) * inv;
    const SL2 g(s64(u.value()), s64(v.value()), s64((D * v).value()), s64(u.value()), p);

    if (!g.pow(p + 1).is_identity()) {
        throw std::invalid_argument("g_D does not have order p + 1: s + sqrt(D) t is not primitive");
    }
    for (auto q : prime_factors(p + 1)) {
        if (g.pow((p + 1) / q).is_identity()) {
            throw std::invalid_argument("g_D does not have order p + 1: s + sqrt(D) t is not primitive");
        }
    }
    return g;
}

TorusDescriptor make_nonsplit_torus(std::uint64_t p, const FpElem& D, const FpElem& s, const FpElem& t) {
    const SL2 g = build_gD(p, D, s, t);
    TorusDescriptor torus{D, g, {}};
    SL2 x = SL2::identity(p);
    for (std::uint64_t k = 0; k <= p; ++k) {
        torus.elements.push_back(x);
        x = x * g;
    }
    auto sorted = torus.elements;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != enumerate_TD(p, D)) {
        throw std::logic_error("internal error: powers of g_D do not exhaust T_D");
    }
    return torus;
}

bool in_normalizer_ND(const SL2& g, const FpElem& D) {
    const auto p = g.modulus();
    if (D.modulus() != p) throw std::invalid_argument("D and g live over different fields");
    const FpElem a = g.ea(), b = g.eb(), c = g.ec(), d = g.ed();
    // [[a, b], [bD, a]] with a^2 - b^2 D = 1
    if (c == b * D && d == a && (a * a - b * b * D).value() == 1) return true;
    // [[x, y], [-yD, -x]] with y^2 D - x^2 = 1
    if (c == -(b * D) && d == -a && (b * b * D - a * a).value() == 1) return true;
    return false;
}

bool in_normalizer_NA(const SL2& g) {
    return (g.b() == 0 && g.c() == 0) || (g.a() == 0 && g.d() == 0);
}

CosetReps coset_reps_split(std::uint64_t p) {
    require_odd_prime(p);
    CosetReps out{TorusKind::split, {}, {}};
    for (std::uint64_t b = 0; b <= (p - 1) / 2; ++b) {
        for (std::uint64_t c = 0; c < p; ++c) {
            out.reps.push_back({SL2(1, s64(b), s64(c), s64(1 + b * c), p), b, c, false});
        }
    }
    return out;
}

std::vector<Residue> build_S(std::uint64_t p) {
    const FpElem i = sqrt_minus_one(p);
    const std::uint64_t half = (p - 1) / 2;
    std::vector<bool> covered(p, false);
    std::vector<Residue> S;
    for (std::uint64_t x = 1; x <= half; ++x) {
        if (covered[x]) continue;
        const FpElem fx(s64(x), p);
        const std::set<Residue> orbit{fx.value(), (-fx).value(), (i * fx).value(), (-(i * fx)).value()};
        std::vector<Residue> lower;
        for (auto r : orbit) {
            covered[r] = true;
            if (r >= 1 && r <= half) lower.push_back(r);
        }
        if (orbit.size() != 4 || lower.size() != 2) {
            throw std::logic_error("internal error: malformed {x, -x, ix, -ix} orbit");
        }
        S.push_back(*std::min_element(lower.begin(), lower.end()));
    }
    return S;
}

CosetReps coset_reps_nonsplit(std::uint64_t p, const FpElem& D) {
    require_odd_prime(p);
    require_nonsquare(p, D);
    CosetReps out{TorusKind::nonsplit, {}, {}};
    const auto lower = [p](Residue a, Residue c) {
        const FpElem fa(s64(a), p);
        return SL2(s64(a), 0, s64(c), s64(fa.inverse().value()), p);
    };
    if (p % 4 == 3) {
        for (std::uint64_t a = 1; a <= (p - 1) / 2; ++a) {
            for (std::uint64_t c = 0; c < p; ++c) out.reps.push_back({lower(a, c), a, c, false});
        }
    } else {
        out.aux = build_S(p);
        const SL2 w = SL2::weyl(p);
        for (auto a : out.aux) {
            for (std::uint64_t c = 0; c < p; ++c) {
                out.reps.push_back({lower(a, c), a, c, false});
                out.reps.push_back({lower(a, c) * w, a, c, true});
            }
        }
    }
    return out;
}

}  // namespace oscdict
