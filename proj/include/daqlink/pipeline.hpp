#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "daqlink/channel.hpp"
#include "daqlink/frame.hpp"
#include "daqlink/link.hpp"

namespace daqlink {

enum class SimMode : uint8_t { Standard, NoFec, Uncoded };

std::string sim_mode_name(SimMode m);
SimMode sim_mode_from_name(const std::string& s);

size_t payload_bits_per_frame(SimMode m);  // 52 / 116 / 52

struct RateModel {
    double frame_clock_hz = 40e6;
    int frame_bits = 120;
    double word_clock_hz = 120e6;
    int word_bits = 40;
};

struct EfficiencyReport {
    double line_rate_gbps;
    double standard_data_gbps;
    double nofec_data_gbps;
    double standard_efficiency_pct;
    double nofec_efficiency_pct;
    double code_rate;
};

EfficiencyReport efficiency_report(const RateModel& rates = {});
std::string efficiency_text(const EfficiencyReport& r);

struct LinkMetrics {
    uint64_t frames_tx = 0;
    uint64_t frames_rx = 0;        // frames emitted by the aligner
    uint64_t frames_compared = 0;  // frames matched against expected payloads
    uint64_t pre_fec_bit_errors = 0;
    uint64_t post_fec_bit_errors = 0;
    uint64_t payload_bits = 0;
    uint64_t channel_bits = 0;
    uint64_t corrected_blocks = 0;
    uint64_t uncorrectable_blocks = 0;
    uint64_t header_mismatches = 0;
    uint64_t frame_errors = 0;  // compared frames with at least one payload bit error
    uint64_t lock_latency_bits = 0;

    double pre_fec_ber() const { return channel_bits ? double(pre_fec_bit_errors) / double(channel_bits) : 0.0; }
    double post_fec_ber() const { return payload_bits ? double(post_fec_bit_errors) / double(payload_bits) : 0.0; }
    double fer() const { return frames_compared ? double(frame_errors) / double(frames_compared) : 0.0; }

    std::string summary() const;
};

// TX composition: frame build -> gearbox words -> serial bits. Payloads are
// 52-bit vectors in standard mode, 116-bit in no-FEC mode; uncoded mode is a
// raw passthrough used as the BER baseline.
BitVec tx_chain(const std::vector<BitVec>& payloads, SimMode mode, const CodecConfig& cfg = {});

struct RxOptions {
    // With the aligner the stream may start anywhere; frames consumed while
    // hunting/confirming are link training and never reach the output. When
    // alignment is already known (BER measurement on an established link)
    // the stream is taken to start on a frame boundary.
    bool use_aligner = true;
    FrameMode assumed_mode = FrameMode::Standard;  // for use_aligner == false
    const std::vector<BitVec>* expected = nullptr;  // transmitted payloads, for error accounting
};

struct RxResult {
    std::vector<BitVec> payloads;
    LinkMetrics metrics;
};

RxResult rx_chain(const BitVec& stream, SimMode mode, const RxOptions& opts = {},
                  const CodecConfig& cfg = {});

struct BerRecord {
    double ebn0_db;    // NaN for direct-probability models
    double p_channel;  // per-bit flip probability of the channel model
    SimMode mode = SimMode::Standard;
    uint64_t frames = 0;
    uint64_t payload_bits = 0;
    double pre_fec_ber = 0.0;
    double post_fec_ber = 0.0;
    double fer = 0.0;
    uint64_t corrected_blocks = 0;
    uint64_t uncorrectable_blocks = 0;
    uint64_t seed = 0;
};

BerRecord run_ber_point(const ChannelConfig& cfg, SimMode mode, uint64_t n_frames,
                        const CodecConfig& codec = {});

// One run_ber_point per entry; points are independent (each owns its seed and
// generators) so concurrent execution is bit-identical to sequential.
std::vector<BerRecord> sweep(const std::vector<ChannelConfig>& points, SimMode mode,
                             uint64_t n_frames, const CodecConfig& codec = {},
                             bool parallel = false);

// Eb/N0 grid with per-point seeds derived as base_seed + index.
std::vector<ChannelConfig> make_ebn0_sweep(double start_db, double stop_db, double step_db,
                                           uint64_t base_seed, SimMode mode);

std::string records_to_csv(const std::vector<BerRecord>& records, uint64_t base_seed);
std::vector<BerRecord> csv_to_records(const std::string& text);

}  // namespace daqlink
