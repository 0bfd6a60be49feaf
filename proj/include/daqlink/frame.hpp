#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "daqlink/bch157.hpp"
#include "daqlink/bits.hpp"
#include "daqlink/interleave.hpp"
#include "daqlink/scramble.hpp"

namespace daqlink {

enum class FrameMode : uint8_t { Standard, NoFec };

inline constexpr std::array<uint8_t, 4> kHeaderStandard = {1, 0, 1, 0};
inline constexpr std::array<uint8_t, 4> kHeaderNoFec = {0, 1, 0, 1};

// Standard frame: header(4) | slow control(4) | data(48) | parity(64),
// carried as eight systematic BCH(15,7,2) codewords after interleaving.
// No-FEC frame: header(4) | slow control(4) | data(112), scrambled only.
struct StandardPayload {
    std::array<uint8_t, 4> slow_control{};
    std::array<uint8_t, 48> data{};

    BitVec to_bits() const;
    static StandardPayload from_bits(const BitVec& bits52);
    bool operator==(const StandardPayload&) const = default;
};

struct NoFecPayload {
    std::array<uint8_t, 4> slow_control{};
    std::array<uint8_t, 112> data{};

    BitVec to_bits() const;
    static NoFecPayload from_bits(const BitVec& bits116);
    bool operator==(const NoFecPayload&) const = default;
};

struct Frame120 {
    BitVec bits;  // always 120
    FrameMode mode = FrameMode::Standard;
};

// Everything a codec endpoint must agree on besides the fixed BCH code.
struct CodecConfig {
    ScramblerConfig scrambler{};
    InterleaveMap interleaver = InterleaveMap::standard();
};

struct FrameStatus {
    bool header_ok = true;
    uint16_t corrected_bits = 0;   // channel bits repaired (FEC plus restored header bits)
    uint8_t corrected_mask = 0;      // bit i set = codeword block i had errors corrected
    uint8_t uncorrectable_mask = 0;  // bit i set = codeword block i failed to decode

    bool clean() const { return header_ok && corrected_bits == 0 && uncorrectable_mask == 0; }
    bool uncorrectable() const { return uncorrectable_mask != 0; }
};

struct ParsedStandard {
    StandardPayload payload;
    FrameStatus status;
};

struct ParsedNoFec {
    NoFecPayload payload;
    FrameStatus status;  // only header_ok is meaningful without FEC
};

Frame120 build_standard(const StandardPayload& p, const CodecConfig& cfg = {});
ParsedStandard parse_standard(const Frame120& f, const CodecConfig& cfg = {});

Frame120 build_nofec(const NoFecPayload& p, const CodecConfig& cfg = {});
ParsedNoFec parse_nofec(const Frame120& f, const CodecConfig& cfg = {});

// One frame per line, 30 lowercase hex characters; frame bit 0 is the most
// significant bit of the first hex digit.
std::string frame_to_hex(const BitVec& bits120);
BitVec hex_to_frame(const std::string& line);

}  // namespace daqlink
