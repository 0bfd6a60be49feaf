#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "daqlink/bits.hpp"
#include "daqlink/frame.hpp"

namespace daqlink {

using Word40 = std::array<uint8_t, 40>;

std::array<Word40, 3> frame_to_words(const Frame120& f);
Frame120 words_to_frame(const std::array<Word40, 3>& w, FrameMode mode);

// Parallel-to-serial conversion: bit 0 of each word is emitted first
// (MSB-first) and word order is preserved.
BitVec serialize_words(const std::vector<Word40>& words);
std::vector<Word40> deserialize_words(const BitVec& stream);

enum class AlignerPhase : uint8_t { Hunt, Confirm, Locked };

// Receiver frame aligner. Hunts bit by bit for a frame header, then checks
// the header again at 120-bit strides; 32 consecutive confirmations after
// the initial match lock the link. While locked, one frame is emitted per
// 120 received bits. A locked link tolerates isolated header corruption
// (correctable by the FEC downstream) and only drops back to hunting after
// loss_threshold consecutive bad headers.
struct AlignerConfig {
    int confirmations = 32;
    int loss_threshold = 3;
    bool accept_standard = true;
    bool accept_nofec = true;
};

struct AlignerStatus {
    AlignerPhase phase = AlignerPhase::Hunt;
    int bit_offset = 0;           // locked frame boundary, modulo 120
    FrameMode mode = FrameMode::Standard;
    uint64_t frames_emitted = 0;
    uint64_t bits_consumed = 0;
    uint64_t lock_latency_bits = 0;  // bits consumed when lock was achieved
    uint64_t header_mismatches = 0;  // bad headers seen while locked
    uint64_t locks_lost = 0;
    uint64_t headers_observed = 0;   // matches credited to the current candidate
};

class FrameAligner {
public:
    using Config = AlignerConfig;
    using Status = AlignerStatus;

    explicit FrameAligner(const Config& cfg = Config()) : cfg_(cfg) {}

    // Feed one bit; returns a frame when one completes under lock.
    std::optional<Frame120> push(uint8_t bit);

    std::vector<Frame120> push_stream(const BitVec& stream);

    AlignerPhase phase() const { return st_.phase; }
    const Status& lock_status() const { return st_; }

private:
    bool header_match(std::array<uint8_t, 4>& matched_header) const;

    Config cfg_;
    Status st_;
    std::array<uint8_t, 4> last4_{};
    std::array<uint8_t, 4> locked_header_{};
    uint64_t candidate_anchor_ = 0;  // stream index of the candidate frame start
    uint64_t next_check_ = 0;        // bits_consumed value of the next stride check
    int confirm_count_ = 0;
    int consecutive_bad_ = 0;
    BitVec framebuf_;
};

}  // namespace daqlink
