#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "daqlink/gf16.hpp"

namespace daqlink {

// BCH(15,7,2), systematic, over GF(2^4) with p(x) = x^4 + x + 1.
//
// Bit-order convention used throughout the codec (and by the framer):
// codeword bit index 0 carries the highest power x^14, index 14 carries x^0.
// A codeword is message (indices 0..6, equal to the message word) followed
// by parity (indices 7..14, the remainder of x^8 u(x) mod g(x)).
// Equivalently the first transmitted bit is the MSB of the polynomial.

struct BchParams {
    static constexpr int n = 15;
    static constexpr int k = 7;
    static constexpr int t = 2;
    // g(x) = x^8 + x^7 + x^6 + x^4 + 1
    static constexpr uint16_t gen_poly = 0b1'1101'0001;
    static constexpr int gen_degree = 8;
};

using Msg7 = std::array<uint8_t, 7>;        // index 0 = coefficient of x^6
using Codeword15 = std::array<uint8_t, 15>;  // index 0 = coefficient of x^14

struct Syndromes {
    GfElem s1;  // r(alpha)
    GfElem s3;  // r(alpha^3)
    bool all_zero() const { return s1.is_zero() && s3.is_zero(); }
};

// sigma(x) = 1 + c1 x + c2 x^2, degree in {0,1,2}; valid == false signals the
// detected-uncorrectable case s1 = 0, s3 != 0 (at least 3 errors).
struct LocatorPoly {
    GfElem c1;
    GfElem c2;
    int degree = 0;
    bool valid = true;
};

enum class DecodeStatus : uint8_t { Clean, Corrected, Uncorrectable };

struct DecodeOutcome {
    Msg7 message{};                 // on Uncorrectable: raw systematic bits, unreliable
    DecodeStatus status = DecodeStatus::Clean;
    uint8_t corrected = 0;          // number of bits flipped by the decoder
};

Codeword15 bch_encode(const Msg7& m);

Syndromes bch_syndromes(const Codeword15& r);

LocatorPoly bch_locator(const Syndromes& s);

// Positions (codeword bit indices) whose locators are roots of sigma.
// Root alpha^m corresponds to bit index (m + 14) mod 15.
std::vector<int> chien_search(const LocatorPoly& sigma);

DecodeOutcome bch_decode(const Codeword15& r);

}  // namespace daqlink
