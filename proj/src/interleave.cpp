#include "daqlink/interleave.hpp"

#include <fstream>
#include <stdexcept>

namespace daqlink {

namespace {

void fill_block(std::array<int, kFrameBits>& perm, int base, int rows, int cols)
{
    // write row-major, read column-major
    for (int s = 0; s < rows * cols; s++) {
        int r = s / cols;
        int c = s % cols;
        perm[size_t(base + s)] = base + c * rows + r;
    }
}

}  // namespace

const InterleaveMap& InterleaveMap::standard()
{
    static const InterleaveMap map = [] {
        InterleaveMap m;
        for (int i = 0; i < 4; i++)
            m.perm_[size_t(i)] = i;
        fill_block(m.perm_, 4, 7, 8);
        fill_block(m.perm_, 60, 6, 10);
        m.build_inverse_and_validate();
        return m;
    }();
    return map;
}

InterleaveMap InterleaveMap::identity()
{
    InterleaveMap m;
    for (int i = 0; i < kFrameBits; i++)
        m.perm_[size_t(i)] = i;
    m.build_inverse_and_validate();
    return m;
}

InterleaveMap InterleaveMap::from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("interleaver table: cannot open " + path);
    InterleaveMap m;
    for (int i = 0; i < kFrameBits; i++) {
        if (!(in >> m.perm_[size_t(i)]))
            throw std::runtime_error("interleaver table: expected 120 integers in " + path);
    }
    m.build_inverse_and_validate();
    return m;
}

void InterleaveMap::build_inverse_and_validate()
{
    std::array<bool, kFrameBits> seen{};
    for (int i = 0; i < kFrameBits; i++) {
        int d = perm_[size_t(i)];
        if (d < 0 || d >= kFrameBits || seen[size_t(d)])
            throw std::invalid_argument("interleaver table: not a permutation of 0..119");
        seen[size_t(d)] = true;
        inv_[size_t(d)] = i;
    }
    for (int i = 0; i < 4; i++)
        if (perm_[size_t(i)] != i)
            throw std::invalid_argument("interleaver table: header bits 0..3 must stay in place");
    for (int i = 0; i < kFrameBits; i++) {
        bool half_a = i < 60;
        if ((perm_[size_t(i)] < 60) != half_a)
            throw std::invalid_argument("interleaver table: halves must map onto themselves");
    }
}

BitVec interleave120(const BitVec& frame, const InterleaveMap& map)
{
    if (frame.size() != kFrameBits)
        throw std::invalid_argument("interleave120: frame must be 120 bits");
    BitVec out(kFrameBits);
    for (int i = 0; i < kFrameBits; i++)
        out[size_t(map.dest(i))] = frame[size_t(i)];
    return out;
}

BitVec deinterleave120(const BitVec& frame, const InterleaveMap& map)
{
    if (frame.size() != kFrameBits)
        throw std::invalid_argument("deinterleave120: frame must be 120 bits");
    BitVec out(kFrameBits);
    for (int i = 0; i < kFrameBits; i++)
        out[size_t(i)] = frame[size_t(map.dest(i))];
    return out;
}

}  // namespace daqlink
