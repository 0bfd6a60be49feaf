#include "daqlink/frame.hpp"

#include <stdexcept>

namespace daqlink {

namespace {

BitVec take(const BitVec& v, size_t from, size_t n)
{
    return BitVec(v.begin() + long(from), v.begin() + long(from + n));
}

}  // namespace

BitVec StandardPayload::to_bits() const
{
    BitVec bits;
    bits.reserve(52);
    bits.insert(bits.end(), slow_control.begin(), slow_control.end());
    bits.insert(bits.end(), data.begin(), data.end());
    return bits;
}

StandardPayload StandardPayload::from_bits(const BitVec& bits52)
{
    if (bits52.size() != 52)
        throw std::invalid_argument("StandardPayload: need 52 bits");
    StandardPayload p;
    for (size_t i = 0; i < 4; i++)
        p.slow_control[i] = bits52[i] & 1u;
    for (size_t i = 0; i < 48; i++)
        p.data[i] = bits52[4 + i] & 1u;
    return p;
}

BitVec NoFecPayload::to_bits() const
{
    BitVec bits;
    bits.reserve(116);
    bits.insert(bits.end(), slow_control.begin(), slow_control.end());
    bits.insert(bits.end(), data.begin(), data.end());
    return bits;
}

NoFecPayload NoFecPayload::from_bits(const BitVec& bits116)
{
    if (bits116.size() != 116)
        throw std::invalid_argument("NoFecPayload: need 116 bits");
    NoFecPayload p;
    for (size_t i = 0; i < 4; i++)
        p.slow_control[i] = bits116[i] & 1u;
    for (size_t i = 0; i < 112; i++)
        p.data[i] = bits116[4 + i] & 1u;
    return p;
}

Frame120 build_standard(const StandardPayload& p, const CodecConfig& cfg)
{
    BitVec scrambled = scramble52(p.to_bits(), cfg.scrambler);

    BitVec encoded_input;
    encoded_input.reserve(56);
    encoded_input.insert(encoded_input.end(), kHeaderStandard.begin(), kHeaderStandard.end());
    encoded_input.insert(encoded_input.end(), scrambled.begin(), scrambled.end());

    BitVec frame(kFrameBits);
    for (int blk = 0; blk < 8; blk++) {
        Msg7 m{};
        for (int i = 0; i < 7; i++)
            m[size_t(i)] = encoded_input[size_t(blk * 7 + i)];
        Codeword15 c = bch_encode(m);
        for (int i = 0; i < 15; i++)
            frame[size_t(blk * 15 + i)] = c[size_t(i)];
    }

    return Frame120{interleave120(frame, cfg.interleaver), FrameMode::Standard};
}

ParsedStandard parse_standard(const Frame120& f, const CodecConfig& cfg)
{
    if (f.bits.size() != kFrameBits)
        throw std::invalid_argument("parse_standard: frame must be 120 bits");

    BitVec work = deinterleave120(f.bits, cfg.interleaver);

    ParsedStandard out;
    // The header is a pinned protocol constant, so received header bits that
    // disagree with it are channel damage; restore them before decoding and
    // count the repairs. This keeps a burst across the header from pushing
    // codeword 0 past its correction radius.
    for (size_t i = 0; i < 4; i++) {
        if (work[i] != kHeaderStandard[i]) {
            work[i] = kHeaderStandard[i];
            out.status.corrected_bits++;
        }
    }

    BitVec decoded(56);
    for (int blk = 0; blk < 8; blk++) {
        Codeword15 r{};
        for (int i = 0; i < 15; i++)
            r[size_t(i)] = work[size_t(blk * 15 + i)];
        DecodeOutcome d = bch_decode(r);
        for (int i = 0; i < 7; i++)
            decoded[size_t(blk * 7 + i)] = d.message[size_t(i)];
        if (d.status == DecodeStatus::Uncorrectable) {
            out.status.uncorrectable_mask |= uint8_t(1u << blk);
        } else if (d.status == DecodeStatus::Corrected) {
            out.status.corrected_mask |= uint8_t(1u << blk);
            out.status.corrected_bits = uint16_t(out.status.corrected_bits + d.corrected);
        }
    }

    for (size_t i = 0; i < 4; i++)
        if (decoded[i] != kHeaderStandard[i])
            out.status.header_ok = false;

    out.payload = StandardPayload::from_bits(descramble52(take(decoded, 4, 52), cfg.scrambler));
    return out;
}

Frame120 build_nofec(const NoFecPayload& p, const CodecConfig& cfg)
{
    BitVec frame;
    frame.reserve(kFrameBits);
    frame.insert(frame.end(), kHeaderNoFec.begin(), kHeaderNoFec.end());
    BitVec scrambled = scramble116(p.to_bits(), cfg.scrambler);
    frame.insert(frame.end(), scrambled.begin(), scrambled.end());
    return Frame120{std::move(frame), FrameMode::NoFec};
}

ParsedNoFec parse_nofec(const Frame120& f, const CodecConfig& cfg)
{
    if (f.bits.size() != kFrameBits)
        throw std::invalid_argument("parse_nofec: frame must be 120 bits");
    ParsedNoFec out;
    for (size_t i = 0; i < 4; i++)
        if (f.bits[i] != kHeaderNoFec[i])
            out.status.header_ok = false;
    out.payload = NoFecPayload::from_bits(descramble116(take(f.bits, 4, 116), cfg.scrambler));
    return out;
}

std::string frame_to_hex(const BitVec& bits120)
{
    if (bits120.size() != kFrameBits)
        throw std::invalid_argument("frame_to_hex: frame must be 120 bits");
    static const char* digits = "0123456789abcdef";
    std::string s(30, '0');
    for (size_t i = 0; i < 30; i++) {
        unsigned nib = 0;
        for (size_t b = 0; b < 4; b++)
            nib = (nib << 1) | bits120[i * 4 + b];
        s[i] = digits[nib];
    }
    return s;
}

BitVec hex_to_frame(const std::string& line)
{
    if (line.size() != 30)
        throw std::invalid_argument("hex_to_frame: expected 30 hex characters");
    BitVec bits(kFrameBits);
    for (size_t i = 0; i < 30; i++) {
        char c = line[i];
        unsigned nib;
        if (c >= '0' && c <= '9')
            nib = unsigned(c - '0');
        else if (c >= 'a' && c <= 'f')
            nib = unsigned(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F')
            nib = unsigned(c - 'A' + 10);
        else
            throw std::invalid_argument("hex_to_frame: invalid hex character");
        for (size_t b = 0; b < 4; b++)
            bits[i * 4 + b] = uint8_t((nib >> (3 - b)) & 1u);
    }
    return bits;
}

}  // namespace daqlink
