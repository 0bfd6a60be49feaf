#pragma once

#include <array>
#include <cstdint>

#include "daqlink/bits.hpp"

namespace daqlink {

// Frame-synchronous additive scrambler. Payload bits are XORed with the
// output of a 13-bit Fibonacci LFSR that is reseeded at every frame, so the
// transform is an involution and a channel bit flip never multiplies.
//
// LFSR recurrence for x^13 + x^4 + x^3 + x + 1:
//   b[n+13] = b[n+4] ^ b[n+3] ^ b[n+1] ^ b[n]
// The state word holds b[n..n+12] in bits 0..12; the output bit per step is
// bit 0 and the polynomial mask below selects the feedback taps x^0..x^12
// (the x^13 coefficient is implicit).
inline constexpr uint16_t kScramblerPoly = 0b0'0000'0001'1011;  // x^4+x^3+x+1

struct ScramblerConfig {
    uint16_t poly = kScramblerPoly;
    std::array<uint16_t, 4> seeds = {0x1B57, 0x0E4A, 0x15C3, 0x07B9};
};

// len LFSR output bits from the given 13-bit seed; seed must be nonzero
BitVec keystream(uint16_t seed, size_t len, uint16_t poly = kScramblerPoly);

// 52-bit payload as four parallel 13-bit lanes, lane i seeded from seeds[i]
BitVec scramble52(const BitVec& payload, const ScramblerConfig& cfg = {});
BitVec descramble52(const BitVec& payload, const ScramblerConfig& cfg = {});

// 116-bit payload as a single keystream from the lane-0 seed
BitVec scramble116(const BitVec& payload, const ScramblerConfig& cfg = {});
BitVec descramble116(const BitVec& payload, const ScramblerConfig& cfg = {});

void validate_scrambler(const ScramblerConfig& cfg);  // throws on bad seed/poly

}  // namespace daqlink
