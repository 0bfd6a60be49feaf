#include "daqlink/scramble.hpp"

#include <bit>
#include <stdexcept>

namespace daqlink {

namespace {

constexpr uint16_t kStateMask = 0x1FFF;

inline uint16_t lfsr_step(uint16_t state, uint16_t poly, uint8_t* out_bit)
{
    *out_bit = uint8_t(state & 1u);
    uint16_t fb = uint16_t(std::popcount(uint16_t(state & poly)) & 1);
    return uint16_t((state >> 1) | (fb << 12));
}

BitVec xor_with_keystream(const BitVec& payload, size_t expected_len,
                          const ScramblerConfig& cfg, bool lanes)
{
    if (payload.size() != expected_len)
        throw std::invalid_argument("scrambler: wrong payload width");
    validate_scrambler(cfg);

    BitVec out(payload.size());
    if (lanes) {
        for (size_t lane = 0; lane < 4; lane++) {
            uint16_t state = uint16_t(cfg.seeds[lane] & kStateMask);
            for (size_t i = 0; i < 13; i++) {
                uint8_t ks;
                state = lfsr_step(state, cfg.poly, &ks);
                out[lane * 13 + i] = uint8_t((payload[lane * 13 + i] ^ ks) & 1u);
            }
        }
    } else {
        uint16_t state = uint16_t(cfg.seeds[0] & kStateMask);
        for (size_t i = 0; i < payload.size(); i++) {
            uint8_t ks;
            state = lfsr_step(state, cfg.poly, &ks);
            out[i] = uint8_t((payload[i] ^ ks) & 1u);
        }
    }
    return out;
}

}  // namespace

void validate_scrambler(const ScramblerConfig& cfg)
{
    if ((cfg.poly & kStateMask) == 0 || (cfg.poly & 1u) == 0)
        throw std::invalid_argument("scrambler: polynomial mask needs a nonzero x^0 tap");
    for (uint16_t s : cfg.seeds)
        if ((s & kStateMask) == 0)
            throw std::invalid_argument("scrambler: lane seed must be nonzero");
}

BitVec keystream(uint16_t seed, size_t len, uint16_t poly)
{
    if ((seed & kStateMask) == 0)
        throw std::invalid_argument("keystream: seed must be nonzero");
    BitVec out(len);
    uint16_t state = uint16_t(seed & kStateMask);
    for (size_t i = 0; i < len; i++) {
        uint8_t ks;
        state = lfsr_step(state, poly, &ks);
        out[i] = ks;
    }
    return out;
}

BitVec scramble52(const BitVec& payload, const ScramblerConfig& cfg)
{
    return xor_with_keystream(payload, 52, cfg, true);
}

BitVec descramble52(const BitVec& payload, const ScramblerConfig& cfg)
{
    return xor_with_keystream(payload, 52, cfg, true);
}

BitVec scramble116(const BitVec& payload, const ScramblerConfig& cfg)
{
    return xor_with_keystream(payload, 116, cfg, false);
}

BitVec descramble116(const BitVec& payload, const ScramblerConfig& cfg)
{
    return xor_with_keystream(payload, 116, cfg, false);
}

}  // namespace daqlink
