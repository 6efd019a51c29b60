#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "oscdict/finite_field.hpp"

namespace oscdict {

/// Row-major 2x2 matrix [[a, b], [c, d]] over F_p with ad - bc = 1.
class SL2 {
public:
    /// Entries are reduced mod p; throws std::invalid_argument when det != 1.
    SL2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::uint64_t p);

    static SL2 identity(std::uint64_t p) { return SL2(1, 0, 0, 1, p); }
    /// The Weyl element [[0, 1], [-1, 0]].
    static SL2 weyl(std::uint64_t p) { return SL2(0, 1, -1, 0, p); }

    Residue a() const noexcept { return a_; }
    Residue b() const noexcept { return b_; }
    Residue c() const noexcept { return c_; }
    Residue d() const noexcept { return d_; }
    std::uint64_t modulus() const noexcept { return p_; }

    FpElem ea() const { return FpElem(static_cast<std::int64_t>(a_), p_); }
    FpElem eb() const { return FpElem(static_cast<std::int64_t>(b_), p_); }
    FpElem ec() const { return FpElem(static_cast<std::int64_t>(c_), p_); }
    FpElem ed() const { return FpElem(static_cast<std::int64_t>(d_), p_); }

    SL2 operator*(const SL2& o) const;
    SL2 inverse() const;
    SL2 pow(std::uint64_t k) const;
    bool is_identity() const noexcept { return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 1; }

    bool operator==(const SL2& o) const noexcept = default;
    auto operator<=>(const SL2& o) const noexcept = default;

    friend std::ostream& operator<<(std::ostream& os, const SL2& g) {
        return os << "[[" << g.a_ << ", " << g.b_ << "], [" << g.c_ << ", " << g.d_ << "]]";
    }

private:
    struct Unchecked {};
    SL2(Residue a, Residue b, Residue c, Residue d, std::uint64_t p, Unchecked) noexcept
        : a_(a), b_(b), c_(c), d_(d), p_(p) {}

    Residue a_, b_, c_, d_;
    std::uint64_t p_;
};

/// All p(p^2 - 1) elements of SL(2, F_p) in lexicographic (a, b, c, d) order.
std::vector<SL2> enumerate_sl2(std::uint64_t p);

}  // namespace oscdict
