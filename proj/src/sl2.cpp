#include "oscdict/sl2.hpp"

#include <stdexcept>

namespace oscdict {

namespace {

Residue reduce(std::int64_t v, std::uint64_t p) {
    return FpElem(v, p).value();
}

}  // namespace

SL2::SL2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::uint64_t p)
    : a_(reduce(a, p)), b_(reduce(b, p)), c_(reduce(c, p)), d_(reduce(d, p)), p_(p) {
    const Residue det = (a_ * d_ + p_ * p_ - b_ * c_) % p_;
    if (det != 1) throw std::invalid_argument("matrix is not in SL(2, F_p): det != 1");
}

SL2 SL2::operator*(const SL2& o) const {
    if (p_ != o.p_) throw std::invalid_argument("mixed moduli in SL2 product");
    return SL2((a_ * o.a_ + b_ * o.c_) % p_, (a_ * o.b_ + b_ * o.d_) % p_,
               (c_ * o.a_ + d_ * o.c_) % p_, (c_ * o.b_ + d_ * o.d_) % p_, p_, Unchecked{});
}

SL2 SL2::inverse() const {
    return SL2(d_, (p_ - b_) % p_, (p_ - c_) % p_, a_, p_, Unchecked{});
}

SL2 SL2::pow(std::uint64_t k) const {
    SL2 result = identity(p_);
    SL2 base = *this;
    while (k > 0) {
        if (k & 1u) result = result * base;
        base = base * base;
        k >>= 1u;
    }
    return result;
}

std::vector<SL2> enumerate_sl2(std::uint64_t p) {
    std::vector<SL2> out;
    out.reserve(p * (p * p - 1));
    for (std::uint64_t a = 0; a < p; ++a)
        for (std::uint64_t b = 0; b < p; ++b)
            for (std::uint64_t c = 0; c < p; ++c)
                for (std::uint64_t d = 0; d < p; ++d)
                    if ((a * d + p * p - b * c) % p == 1)
                        out.emplace_back(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b),
                                         static_cast<std::int64_t>(c), static_cast<std::int64_t>(d), p);
    return out;
}

}  // namespace oscdict
