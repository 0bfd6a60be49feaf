#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "daqlink/bch157.hpp"

using namespace daqlink;

namespace {

// --- independent oracles -------------------------------------------------
// Codewords as 15-bit words here, bit 14 of the word = codeword index 0
// (the x^14 coefficient), so word bit b holds the coefficient of x^b.

uint16_t word_from_codeword(const Codeword15& c)
{
    uint16_t w = 0;
    for (int i = 0; i < 15; i++)
        if (c[size_t(i)])
            w |= uint16_t(1u << (14 - i));
    return w;
}

Codeword15 codeword_from_word(uint16_t w)
{
    Codeword15 c{};
    for (int i = 0; i < 15; i++)
        c[size_t(i)] = uint8_t((w >> (14 - i)) & 1u);
    return c;
}

// plain polynomial long division: remainder of x^8 u(x) mod g(x)
uint16_t longdiv_parity(uint8_t msg)
{
    uint32_t dividend = uint32_t(msg) << 8;  // msg bit 0 of Msg7 = x^6, so value bit 6..0 << 8
    const uint32_t g = 0b1'1101'0001;
    for (int d = 14; d >= 8; d--)
        if (dividend & (1u << d))
            dividend ^= g << (d - 8);
    return uint16_t(dividend & 0xFF);
}

uint16_t oracle_encode_word(uint8_t msg)
{
    return uint16_t((uint32_t(msg) << 8) | longdiv_parity(msg));
}

Msg7 msg_from_byte(uint8_t m)
{
    Msg7 out{};
    for (int i = 0; i < 7; i++)
        out[size_t(i)] = uint8_t((m >> (6 - i)) & 1u);
    return out;
}

uint8_t byte_from_msg(const Msg7& m)
{
    uint8_t b = 0;
    for (int i = 0; i < 7; i++)
        b = uint8_t((b << 1) | m[size_t(i)]);
    return b;
}

int weight(uint16_t w)
{
    int n = 0;
    while (w) {
        n += w & 1u;
        w >>= 1;
    }
    return n;
}

// peasant multiply, independent of the gf16 tables
uint8_t peasant_mul(uint8_t a, uint8_t b)
{
    uint8_t r = 0;
    while (b) {
        if (b & 1u)
            r ^= a;
        b >>= 1;
        a = uint8_t(a << 1);
        if (a & 0x10)
            a ^= 0b10011;
    }
    return uint8_t(r & 0x0F);
}

uint8_t oracle_alpha_pow(int e)
{
    e %= 15;
    if (e < 0)
        e += 15;
    uint8_t r = 1;
    for (int i = 0; i < e; i++)
        r = peasant_mul(r, 2);
    return r;
}

// direct evaluation of r(alpha^k) from codeword bits
uint8_t oracle_syndrome(const Codeword15& r, int k)
{
    uint8_t acc = 0;
    for (int i = 0; i < 15; i++)
        if (r[size_t(i)])
            acc ^= oracle_alpha_pow(k * (14 - i));
    return acc;
}

std::vector<uint16_t> all_codeword_words()
{
    std::vector<uint16_t> cws;
    for (int m = 0; m < 128; m++)
        cws.push_back(oracle_encode_word(uint8_t(m)));
    return cws;
}

}  // namespace

TEST_CASE("encode matches polynomial long division for all 128 messages")
{
    for (int m = 0; m < 128; m++) {
        Codeword15 c = bch_encode(msg_from_byte(uint8_t(m)));
        CHECK(word_from_codeword(c) == oracle_encode_word(uint8_t(m)));
    }
}

TEST_CASE("encode examples")
{
    Codeword15 zero = bch_encode(msg_from_byte(0));
    for (uint8_t b : zero)
        CHECK(b == 0);

    // 1000000 -> data 1000000, parity 11101000 (x^14 mod g)
    Codeword15 c = bch_encode(msg_from_byte(0b1000000));
    uint16_t w = word_from_codeword(c);
    CHECK((w >> 8) == 0b1000000);
    CHECK((w & 0xFF) == 0b11101000);
}

TEST_CASE("every codeword has zero syndromes (implementation and oracle)")
{
    for (int m = 0; m < 128; m++) {
        Codeword15 c = bch_encode(msg_from_byte(uint8_t(m)));
        Syndromes s = bch_syndromes(c);
        CHECK(s.s1.value() == 0);
        CHECK(s.s3.value() == 0);
        CHECK(oracle_syndrome(c, 1) == 0);
        CHECK(oracle_syndrome(c, 3) == 0);
    }
}

TEST_CASE("minimum nonzero codeword weight is 5")
{
    int wmin = 15;
    for (int m = 1; m < 128; m++)
        wmin = std::min(wmin, weight(oracle_encode_word(uint8_t(m))));
    CHECK(wmin == 5);
}

TEST_CASE("syndromes match direct evaluation and locate single flips")
{
    for (int j = 0; j < 15; j++) {
        Codeword15 r{};
        r[size_t(j)] = 1;  // zero codeword with one flip
        Syndromes s = bch_syndromes(r);
        CHECK(s.s1.value() == oracle_alpha_pow(14 - j));
        CHECK(s.s3.value() == oracle_syndrome(r, 3));

        LocatorPoly sigma = bch_locator(s);
        CHECK(sigma.degree == 1);
        auto pos = chien_search(sigma);
        REQUIRE(pos.size() == 1);
        CHECK(pos[0] == j);
    }
}

TEST_CASE("syndromes depend only on the error pattern")
{
    uint32_t state = 0xC0FFEE;
    auto next = [&] {
        state = state * 1664525u + 1013904223u;
        return state;
    };
    for (int trial = 0; trial < 200; trial++) {
        uint8_t m = uint8_t(next() % 128);
        uint16_t e = uint16_t(next() & 0x7FFF);
        Codeword15 noisy = codeword_from_word(uint16_t(oracle_encode_word(m) ^ e));
        Codeword15 pattern = codeword_from_word(e);
        Syndromes a = bch_syndromes(noisy);
        Syndromes b = bch_syndromes(pattern);
        CHECK(a.s1 == b.s1);
        CHECK(a.s3 == b.s3);
    }
}

TEST_CASE("two-error patterns give a degree-2 locator with exactly those roots")
{
    for (int i = 0; i < 15; i++) {
        for (int j = i + 1; j < 15; j++) {
            Codeword15 r{};
            r[size_t(i)] = 1;
            r[size_t(j)] = 1;
            LocatorPoly sigma = bch_locator(bch_syndromes(r));
            CHECK(sigma.degree == 2);
            auto pos = chien_search(sigma);
            REQUIRE(pos.size() == 2);
            std::sort(pos.begin(), pos.end());
            CHECK(pos[0] == i);
            CHECK(pos[1] == j);
        }
    }
}

TEST_CASE("chien search edge cases")
{
    LocatorPoly one;  // sigma = 1
    CHECK(chien_search(one).empty());

    // single flip at position 14
    Codeword15 r{};
    r[14] = 1;
    auto pos = chien_search(bch_locator(bch_syndromes(r)));
    REQUIRE(pos.size() == 1);
    CHECK(pos[0] == 14);

    // flips at {2, 9}
    Codeword15 r2{};
    r2[2] = 1;
    r2[9] = 1;
    auto pos2 = chien_search(bch_locator(bch_syndromes(r2)));
    std::sort(pos2.begin(), pos2.end());
    REQUIRE(pos2.size() == 2);
    CHECK(pos2[0] == 2);
    CHECK(pos2[1] == 9);
}

TEST_CASE("locator flags s1 = 0, s3 != 0 as uncorrectable")
{
    Syndromes s{GfElem(0), GfElem(5)};
    LocatorPoly sigma = bch_locator(s);
    CHECK_FALSE(sigma.valid);
    CHECK(chien_search(sigma).empty());
}

TEST_CASE("exhaustive decode: every message, every weight <= 2 error pattern")
{
    std::vector<uint16_t> patterns;
    patterns.push_back(0);
    for (int i = 0; i < 15; i++)
        patterns.push_back(uint16_t(1u << i));
    for (int i = 0; i < 15; i++)
        for (int j = i + 1; j < 15; j++)
            patterns.push_back(uint16_t((1u << i) | (1u << j)));
    REQUIRE(patterns.size() == 121);

    for (int m = 0; m < 128; m++) {
        uint16_t cw = oracle_encode_word(uint8_t(m));
        for (uint16_t e : patterns) {
            DecodeOutcome out = bch_decode(codeword_from_word(uint16_t(cw ^ e)));
            CHECK(byte_from_msg(out.message) == m);
            int w = weight(e);
            if (w == 0)
                CHECK(out.status == DecodeStatus::Clean);
            else {
                CHECK(out.status == DecodeStatus::Corrected);
                CHECK(out.corrected == w);
            }
        }
    }
}

TEST_CASE("decode agrees with the nearest-codeword brute force on all 32768 words")
{
    std::vector<uint16_t> cws = all_codeword_words();

    for (uint32_t w = 0; w < 32768; w++) {
        int best = 16, second = 16;
        uint16_t best_cw = 0;
        for (uint16_t cw : cws) {
            int d = weight(uint16_t(w ^ cw));
            if (d < best) {
                second = best;
                best = d;
                best_cw = cw;
            } else if (d < second) {
                second = d;
            }
        }
        DecodeOutcome out = bch_decode(codeword_from_word(uint16_t(w)));
        if (best <= 2) {
            // nearest codeword within the correction radius is unique
            // (d_min = 5), so the decoder must land on it
            REQUIRE(best < second);
            CHECK(out.status != DecodeStatus::Uncorrectable);
            CHECK(byte_from_msg(out.message) == (best_cw >> 8));
            CHECK(out.corrected == best);
        } else {
            // beyond the radius: either flagged, or a bounded-distance
            // miscorrection landing on a real codeword within distance 2
            if (out.status != DecodeStatus::Uncorrectable) {
                uint16_t claimed = oracle_encode_word(byte_from_msg(out.message));
                CHECK(weight(uint16_t(claimed ^ w)) <= 2);
                CHECK(weight(uint16_t(claimed ^ w)) == out.corrected);
            }
        }
    }
}
