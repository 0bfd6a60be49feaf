#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace daqlink {

// GF(2^4) with reduction polynomial p(x) = x^4 + x + 1 (0b10011).
// alpha = 0b0010 (x) is primitive: alpha^15 = 1 and no smaller power is 1.
class GfElem {
public:
    constexpr GfElem() : v_(0) {}
    constexpr explicit GfElem(uint8_t v) : v_(uint8_t(v & 0x0F)) {}

    constexpr uint8_t value() const { return v_; }
    constexpr bool is_zero() const { return v_ == 0; }

    friend constexpr bool operator==(GfElem a, GfElem b) { return a.v_ == b.v_; }
    friend constexpr bool operator!=(GfElem a, GfElem b) { return a.v_ != b.v_; }

    // addition = subtraction = XOR in characteristic 2
    friend constexpr GfElem operator+(GfElem a, GfElem b) { return GfElem(uint8_t(a.v_ ^ b.v_)); }

private:
    uint8_t v_;
};

inline constexpr int kGfFieldSize = 16;
inline constexpr int kGfGroupOrder = 15;  // nonzero elements
inline constexpr uint8_t kGfReductionPoly = 0b10011;

namespace detail {

// alpha^i, extended to two periods so syndrome code can index without reducing mod 15
constexpr std::array<uint8_t, 30> build_antilog()
{
    std::array<uint8_t, 30> t{};
    uint8_t v = 1;
    for (int i = 0; i < 30; i++) {
        t[i] = v;
        v = uint8_t(v << 1);
        if (v & 0x10)
            v ^= kGfReductionPoly;
    }
    return t;
}

constexpr std::array<int8_t, 16> build_log()
{
    std::array<int8_t, 16> t{};
    t[0] = -1;  // log of zero is undefined
    constexpr auto anti = build_antilog();
    std::array<int8_t, 16> out{};
    out[0] = -1;
    for (int i = 0; i < 15; i++)
        out[anti[i]] = int8_t(i);
    return out;
}

inline constexpr auto kAntilog = build_antilog();
inline constexpr auto kLog = build_log();

}  // namespace detail

constexpr GfElem gf_alpha_pow(int k)
{
    int e = k % kGfGroupOrder;
    if (e < 0)
        e += kGfGroupOrder;
    return GfElem(detail::kAntilog[std::size_t(e)]);
}

// discrete log; precondition a != 0
int gf_log(GfElem a);

constexpr GfElem gf_mul(GfElem a, GfElem b)
{
    if (a.is_zero() || b.is_zero())
        return GfElem(0);
    int s = detail::kLog[a.value()] + detail::kLog[b.value()];
    return GfElem(detail::kAntilog[std::size_t(s)]);
}

constexpr GfElem operator*(GfElem a, GfElem b) { return gf_mul(a, b); }

// multiplicative inverse; throws std::domain_error on zero
GfElem gf_inv(GfElem a);

GfElem gf_div(GfElem a, GfElem b);  // a / b, b != 0

constexpr GfElem gf_pow(GfElem a, int e)
{
    GfElem r(1);
    for (int i = 0; i < e; i++)
        r = gf_mul(r, a);
    return r;
}

}  // namespace daqlink
