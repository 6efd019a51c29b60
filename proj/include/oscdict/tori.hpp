#pragma once

// Maximal tori of SL(2, F_p): the non-split model T_D, its normalizer, and
// coset representatives enumerating every conjugate torus of each kind.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "oscdict/finite_field.hpp"
#include "oscdict/sl2.hpp"

namespace oscdict {

enum class TorusKind { split, nonsplit };

std::string_view to_string(TorusKind kind);

/// The cyclic non-split torus T_D = {[[x, y], [Dy, x]] : x^2 - D y^2 = 1}.
struct TorusDescriptor {
    FpElem D;
    SL2 generator;
    /// generator^0, ..., generator^p.
    std::vector<SL2> elements;
};

/**
 * One coset representative with the parameters that generated it.
 *  split:    [[1, b], [c, 1 + bc]]     first = b, second = c, weyl = false
 *  nonsplit: [[a, 0], [c, a^-1]] (* w)  first = a, second = c, weyl = w-factor present
 */
struct CosetRep {
    SL2 matrix;
    Residue first;
    Residue second;
    bool weyl;
};

struct CosetReps {
    TorusKind kind;
    std::vector<CosetRep> reps;
    /// The set S when kind = nonsplit and p = 1 mod 4.
    std::vector<Residue> aux;
};

/// Elements of T_D in lexicographic (x, y) order. Throws if D is a square.
std::vector<SL2> enumerate_TD(std::uint64_t p, const FpElem& D);

/// Generator of T_D built from a primitive s + sqrt(D)·t of F_{p^2}.
/// Throws std::invalid_argument when the result does not have order p + 1.
SL2 build_gD(std::uint64_t p, const FpElem& D, const FpElem& s, const FpElem& t);

/// Powers of build_gD(p, D, s, t); checks they exhaust T_D.
TorusDescriptor make_nonsplit_torus(std::uint64_t p, const FpElem& D, const FpElem& s, const FpElem& t);

/// Membership in the normalizer N_D of T_D.
bool in_normalizer_ND(const SL2& g, const FpElem& D);

/// Membership in the normalizer of the diagonal torus A:
/// [[a, 0], [0, a^-1]] or [[0, a], [-a^-1, 0]].
bool in_normalizer_NA(const SL2& g);

/// R_A = {[[1, b], [c, 1 + bc]] : 0 <= b <= (p-1)/2, c in F_p}, ordered by (b, c).
CosetReps coset_reps_split(std::uint64_t p);

/// R_D (p = 3 mod 4) or R'_D (p = 1 mod 4), ordered by (a, c, weyl).
CosetReps coset_reps_nonsplit(std::uint64_t p, const FpElem& D);

/// S subset of [1, (p-1)/2] with one member per orbit {x, -x, ix, -ix}.
/// Throws std::domain_error unless p = 1 mod 4.
std::vector<Residue> build_S(std::uint64_t p);

/// Number of conjugates of each kind: p(p+1)/2 split, p(p-1)/2 non-split.
std::uint64_t torus_count(std::uint64_t p, TorusKind kind);

}  // namespace oscdict
