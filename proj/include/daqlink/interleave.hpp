#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "daqlink/bits.hpp"

namespace daqlink {

inline constexpr int kFrameBits = 120;

// Bijective reordering of the 120-bit frame. perm[i] is the destination of
// source bit i: out[perm[i]] = in[i]. The four header bits 0..3 are fixed
// points and each 60-bit half maps onto itself, so a codeword never crosses
// the half boundary and the header stays searchable before decoding.
//
// Standard geometry: half A payload (bits 4..59, 56 bits) is written
// row-major into a 7x8 matrix and read column-major; half B (bits 60..119,
// 60 bits) uses a 6x10 matrix the same way.
class InterleaveMap {
public:
    static const InterleaveMap& standard();
    static InterleaveMap identity();
    static InterleaveMap from_file(const std::string& path);

    int dest(int i) const { return perm_[size_t(i)]; }
    int src(int i) const { return inv_[size_t(i)]; }
    const std::array<int, kFrameBits>& table() const { return perm_; }

private:
    InterleaveMap() = default;
    void build_inverse_and_validate();

    std::array<int, kFrameBits> perm_{};
    std::array<int, kFrameBits> inv_{};
};

BitVec interleave120(const BitVec& frame, const InterleaveMap& map = InterleaveMap::standard());
BitVec deinterleave120(const BitVec& frame, const InterleaveMap& map = InterleaveMap::standard());

}  // namespace daqlink
