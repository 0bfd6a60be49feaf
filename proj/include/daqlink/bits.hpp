#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace daqlink {

// Bit streams are kept unpacked, one bit per byte (values 0/1).
// Byte packing is MSB-first: stream bit 0 = most significant bit of byte 0.
using BitVec = std::vector<uint8_t>;

BitVec bytes_to_bits(const uint8_t* data, size_t len);
BitVec bytes_to_bits(const std::vector<uint8_t>& bytes);
std::vector<uint8_t> bits_to_bytes(const BitVec& bits);  // tail zero-padded

size_t hamming_distance(const BitVec& a, const BitVec& b);

template <size_t N>
size_t hamming_distance(const std::array<uint8_t, N>& a, const std::array<uint8_t, N>& b)
{
    size_t d = 0;
    for (size_t i = 0; i < N; i++)
        d += (a[i] ^ b[i]) & 1u;
    return d;
}

std::string bits_to_string(const BitVec& bits);
BitVec bits_from_string(const std::string& s);  // "0"/"1" characters

}  // namespace daqlink
