#include "daqlink/link.hpp"

#include <stdexcept>

namespace daqlink {

std::array<Word40, 3> frame_to_words(const Frame120& f)
{
    if (f.bits.size() != kFrameBits)
        throw std::invalid_argument("frame_to_words: frame must be 120 bits");
    std::array<Word40, 3> w{};
    for (int i = 0; i < kFrameBits; i++)
        w[size_t(i / 40)][size_t(i % 40)] = f.bits[size_t(i)];
    return w;
}

Frame120 words_to_frame(const std::array<Word40, 3>& w, FrameMode mode)
{
    Frame120 f;
    f.mode = mode;
    f.bits.resize(kFrameBits);
    for (int i = 0; i < kFrameBits; i++)
        f.bits[size_t(i)] = w[size_t(i / 40)][size_t(i % 40)];
    return f;
}

BitVec serialize_words(const std::vector<Word40>& words)
{
    BitVec stream;
    stream.reserve(words.size() * 40);
    for (const Word40& w : words)
        stream.insert(stream.end(), w.begin(), w.end());
    return stream;
}

std::vector<Word40> deserialize_words(const BitVec& stream)
{
    if (stream.size() % 40 != 0)
        throw std::invalid_argument("deserialize_words: stream length must be a multiple of 40");
    std::vector<Word40> words(stream.size() / 40);
    for (size_t i = 0; i < stream.size(); i++)
        words[i / 40][i % 40] = stream[i];
    return words;
}

bool FrameAligner::header_match(std::array<uint8_t, 4>& matched_header) const
{
    if (cfg_.accept_standard && last4_ == kHeaderStandard) {
        matched_header = kHeaderStandard;
        return true;
    }
    if (cfg_.accept_nofec && last4_ == kHeaderNoFec) {
        matched_header = kHeaderNoFec;
        return true;
    }
    return false;
}

std::optional<Frame120> FrameAligner::push(uint8_t bit)
{
    bit &= 1u;
    last4_ = {last4_[1], last4_[2], last4_[3], bit};
    st_.bits_consumed++;

    switch (st_.phase) {
    case AlignerPhase::Hunt: {
        if (st_.bits_consumed < 4)
            return std::nullopt;
        std::array<uint8_t, 4> hdr;
        if (header_match(hdr)) {
            locked_header_ = hdr;
            st_.mode = (hdr == kHeaderStandard) ? FrameMode::Standard : FrameMode::NoFec;
            candidate_anchor_ = st_.bits_consumed - 4;
            next_check_ = st_.bits_consumed + kFrameBits;
            confirm_count_ = 0;
            st_.headers_observed = 1;
            st_.phase = AlignerPhase::Confirm;
        }
        return std::nullopt;
    }

    case AlignerPhase::Confirm: {
        if (st_.bits_consumed != next_check_)
            return std::nullopt;
        if (last4_ != locked_header_) {
            st_.phase = AlignerPhase::Hunt;  // resume sliding at the next bit
            return std::nullopt;
        }
        confirm_count_++;
        st_.headers_observed++;
        next_check_ += kFrameBits;
        if (confirm_count_ >= cfg_.confirmations) {
            st_.phase = AlignerPhase::Locked;
            st_.bit_offset = int(candidate_anchor_ % kFrameBits);
            st_.lock_latency_bits = st_.bits_consumed;
            consecutive_bad_ = 0;
            framebuf_.assign(locked_header_.begin(), locked_header_.end());
        }
        return std::nullopt;
    }

    case AlignerPhase::Locked: {
        framebuf_.push_back(bit);
        if (framebuf_.size() < kFrameBits)
            return std::nullopt;

        bool hdr_ok = true;
        for (size_t i = 0; i < 4; i++)
            if (framebuf_[i] != locked_header_[i])
                hdr_ok = false;

        Frame120 frame{std::move(framebuf_), st_.mode};
        framebuf_ = BitVec();
        framebuf_.reserve(kFrameBits);

        if (hdr_ok) {
            consecutive_bad_ = 0;
        } else {
            st_.header_mismatches++;
            consecutive_bad_++;
            if (consecutive_bad_ >= cfg_.loss_threshold) {
                st_.locks_lost++;
                st_.phase = AlignerPhase::Hunt;
                return std::nullopt;  // lock declared lost, frame withheld
            }
        }
        st_.frames_emitted++;
        return frame;
    }
    }
    return std::nullopt;
}

std::vector<Frame120> FrameAligner::push_stream(const BitVec& stream)
{
    std::vector<Frame120> frames;
    for (uint8_t b : stream)
        if (auto f = push(b))
            frames.push_back(std::move(*f));
    return frames;
}

}  // namespace daqlink
