#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "daqlink/frame.hpp"
#include "daqlink/pipeline.hpp"

namespace daqlink {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// malformed content in an otherwise readable file (bad hex line, bad table)
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Simple key = value text; '#' starts a comment. Recognized keys:
//   scrambler.poly, scrambler.seed0..seed3 (integers, 0x.. accepted)
//   interleaver.table (path to a 120-line permutation table)
std::map<std::string, std::string> parse_config_text(const std::string& text);
CodecConfig codec_from_config_file(const std::string& path);
void apply_config_entry(CodecConfig& cfg, const std::string& key, const std::string& value);

struct EncodeSummary {
    uint64_t input_bytes = 0;
    uint64_t frames = 0;
};

// Raw bytes -> one 30-hex-char frame line per payload chunk (final chunk
// zero padded), then a trailer recording the original length so decode can
// trim: "# bytes=N".
EncodeSummary encode_file(const std::string& in_path, const std::string& out_path, SimMode mode,
                          const CodecConfig& cfg = {});

struct DecodeSummary {
    uint64_t frames = 0;
    uint64_t output_bytes = 0;
    uint64_t corrected_bits = 0;
    uint64_t corrected_blocks = 0;
    uint64_t uncorrectable_blocks = 0;
    uint64_t header_mismatches = 0;
    std::string text() const;
};

// format "hex": frame lines as written by encode_file (aligned frames).
// format "raw": packed byte capture of the serial stream; the aligner finds
// the frame boundary.
DecodeSummary decode_file(const std::string& in_path, const std::string& out_path, SimMode mode,
                          const std::string& format = "hex", const CodecConfig& cfg = {});

struct SweepGrid {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
};

SweepGrid parse_grid(const std::string& spec);  // "start:stop:step"

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::vector<uint8_t> read_binary_file(const std::string& path);
void write_binary_file(const std::string& path, const std::vector<uint8_t>& data);

// payload helpers shared by encode/decode and the socket endpoints
std::vector<BitVec> payloads_from_bytes(const std::vector<uint8_t>& bytes, SimMode mode);
std::vector<uint8_t> payload_data_to_bytes(const std::vector<BitVec>& payloads, SimMode mode);

}  // namespace daqlink
