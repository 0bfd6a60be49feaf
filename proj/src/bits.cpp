#include "daqlink/bits.hpp"

#include <stdexcept>

namespace daqlink {

BitVec bytes_to_bits(const uint8_t* data, size_t len)
{
    BitVec bits;
    bits.reserve(len * 8);
    for (size_t i = 0; i < len; i++)
        for (int b = 7; b >= 0; b--)
            bits.push_back((data[i] >> b) & 1u);
    return bits;
}

BitVec bytes_to_bits(const std::vector<uint8_t>& bytes)
{
    return bytes_to_bits(bytes.data(), bytes.size());
}

std::vector<uint8_t> bits_to_bytes(const BitVec& bits)
{
    std::vector<uint8_t> bytes((bits.size() + 7) / 8, 0);
    for (size_t i = 0; i < bits.size(); i++)
        if (bits[i])
            bytes[i / 8] |= uint8_t(0x80u >> (i % 8));
    return bytes;
}

size_t hamming_distance(const BitVec& a, const BitVec& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("hamming_distance: size mismatch");
    size_t d = 0;
    for (size_t i = 0; i < a.size(); i++)
        d += (a[i] ^ b[i]) & 1u;
    return d;
}

std::string bits_to_string(const BitVec& bits)
{
    std::string s;
    s.reserve(bits.size());
    for (uint8_t b : bits)
        s.push_back(b ? '1' : '0');
    return s;
}

BitVec bits_from_string(const std::string& s)
{
    BitVec bits;
    bits.reserve(s.size());
    for (char c : s) {
        if (c == '0')
            bits.push_back(0);
        else if (c == '1')
            bits.push_back(1);
        else
            throw std::invalid_argument("bits_from_string: invalid character");
    }
    return bits;
}

}  // namespace daqlink
