#pragma once

/**
 * Generation of the finite oscillator dictionary.
 *
 * Split part: closed formulas phi_{x,y,z}, one orthonormal (p-2)-set per
 * split torus. Non-split part: diagonalize rho(g_D) by character projections
 * and push the eigenbasis through every non-split coset representative.
 *
 * Every stored vector has unit norm and canonical phase (first coordinate with
 * modulus above 1e-12 is real positive), so equal phase classes serialize to
 * the same bytes.
 */

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "oscdict/tori.hpp"
#include "oscdict/weil_rep.hpp"

namespace oscdict {

inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr std::uint32_t kFormatVersion = 1;

/// Rank classification thresholds on the Frobenius norm of a character projection.
inline constexpr double kRankOneThreshold = 0.5;
inline constexpr double kRankZeroThreshold = 1e-6;
/// Agreement required between diagonal entries of U^(p+1).
inline constexpr double kProjectiveScalarTol = 1e-9;
/// Coordinates below this modulus are skipped when fixing the phase.
inline constexpr double kPhaseFloor = 1e-12;

/// Parameters (y, z) of phi_{x,y,z}.
struct SplitRep {
    Residue y;
    Residue z;
    bool operator==(const SplitRep&) const = default;
};

/// Coset representative [[a, 0], [c, a^-1]], optionally times the Weyl element.
struct NonsplitRep {
    Residue a;
    Residue c;
    bool weyl;
    bool operator==(const NonsplitRep&) const = default;
};

using RepParams = std::variant<SplitRep, NonsplitRep>;

struct DictEntry {
    CVec vector;
    TorusKind kind;
    /// x in [1, p-2] for split entries; eigenvalue index k in [0, p] for non-split.
    std::uint64_t char_index;
    RepParams rep;
};

enum class DictKind { split, nonsplit, both };

std::string_view to_string(DictKind kind);
/// Throws std::invalid_argument for anything but split / nonsplit / both.
DictKind parse_dict_kind(std::string_view s);

struct DictionaryMeta {
    std::uint64_t p = 0;
    DictKind kind = DictKind::split;
    Residue alpha = 0;
    /// Present whenever the dictionary has a non-split part.
    std::optional<Residue> D;
    std::optional<Residue> s;
    std::optional<Residue> t;
    /// U^(p+1) = c_scalar * Id for U = rho(g_D).
    std::optional<Complex> c_scalar;
    /// Index of the character with an empty eigenspace.
    std::optional<std::uint64_t> excluded_char;
    std::string version = std::string(kToolVersion);
    std::string ordering;
};

struct Dictionary {
    DictionaryMeta meta;
    std::vector<DictEntry> entries;
};

/// p(p+1)(p-2)/2 split entries, p^2(p-1)/2 non-split entries.
std::uint64_t dictionary_size(std::uint64_t p, TorusKind kind);
std::uint64_t dictionary_size(std::uint64_t p, DictKind kind);

/// Multiplies v by the unimodular scalar making its first significant entry
/// real positive. Throws std::invalid_argument on the zero vector.
CVec phase_normalize(const CVec& v);

/// B_A = {(p-1)^(-1/2) psi_x : 1 <= x <= p-2}, x ascending.
std::vector<CVec> split_basis(const CharacterTable& chars);
std::vector<CVec> split_basis(std::uint64_t p);

/// Closed formula for phi_{x,y,z}, phase-normalized.
CVec split_closed_form(const CharacterTable& chars, std::uint64_t x, std::uint64_t y, std::uint64_t z);
CVec split_closed_form(std::uint64_t p, std::uint64_t x, std::uint64_t y, std::uint64_t z);

/// All phi_{x,y,z}; x outer, then y, then z.
Dictionary gen_split_dict(std::uint64_t p);

struct Eigenpair {
    std::uint64_t k;
    Complex eigenvalue;
    CVec vector;
};

struct NonsplitBasis {
    FpElem D;
    FpElem s;
    FpElem t;
    SL2 generator;
    Complex c_scalar;
    Complex mu;
    std::uint64_t excluded_k;
    /// Frobenius norm of every projection P_0 .. P_p.
    std::vector<double> projection_norms;
    /// p eigenpairs of rho(g_D), sorted by k.
    std::vector<Eigenpair> pairs;
};

/// Eigenbasis of rho(g_D) by projection onto the p + 1 characters of the torus.
/// Throws std::runtime_error when the rank pattern is not p ones and one zero.
NonsplitBasis nonsplit_basis(std::uint64_t p, const FpElem& D, const FpElem& s, const FpElem& t);
/// Uses the canonical primitive (s, t) for D.
NonsplitBasis nonsplit_basis(std::uint64_t p, const FpElem& D);

/// Non-split dictionary; D defaults to the smallest non-square.
Dictionary gen_nonsplit_dict(std::uint64_t p, std::optional<FpElem> D = std::nullopt);

/// Split, non-split, or both (split entries first).
Dictionary gen_dictionary(std::uint64_t p, DictKind kind, std::optional<FpElem> D = std::nullopt);

/// The SL(2, F_p) coset representative that produced a non-split entry.
SL2 nonsplit_rep_matrix(std::uint64_t p, const NonsplitRep& rep);

}  // namespace oscdict
