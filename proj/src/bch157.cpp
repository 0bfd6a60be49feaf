#include "daqlink/bch157.hpp"

namespace daqlink {

Codeword15 bch_encode(const Msg7& m)
{
    // Shift register division of x^8 u(x) by g(x); the register ends up
    // holding the remainder, MSB (x^7) first.
    uint16_t reg = 0;
    for (int i = 0; i < BchParams::k; i++) {
        uint16_t fb = ((reg >> 7) ^ m[size_t(i)]) & 1u;
        reg = uint16_t((reg << 1) & 0xFF);
        if (fb)
            reg ^= uint16_t(BchParams::gen_poly & 0xFF);
    }
    Codeword15 c{};
    for (int i = 0; i < BchParams::k; i++)
        c[size_t(i)] = m[size_t(i)] & 1u;
    for (int i = 0; i < BchParams::gen_degree; i++)
        c[size_t(BchParams::k + i)] = uint8_t((reg >> (7 - i)) & 1u);
    return c;
}

Syndromes bch_syndromes(const Codeword15& r)
{
    GfElem s1(0), s3(0);
    for (int i = 0; i < BchParams::n; i++) {
        if (!r[size_t(i)])
            continue;
        int e = 14 - i;  // bit index i carries x^(14-i)
        s1 = s1 + gf_alpha_pow(e);
        s3 = s3 + gf_alpha_pow(3 * e);
    }
    return {s1, s3};
}

LocatorPoly bch_locator(const Syndromes& s)
{
    LocatorPoly sigma;
    if (s.s1.is_zero() && s.s3.is_zero())
        return sigma;  // sigma = 1
    if (s.s1.is_zero()) {
        // s1 = 0 with s3 != 0 cannot come from <= 2 errors
        sigma.valid = false;
        return sigma;
    }
    GfElem s1_cubed = gf_pow(s.s1, 3);
    if (s.s3 == s1_cubed) {
        sigma.c1 = s.s1;
        sigma.degree = 1;
        return sigma;
    }
    // Peterson, t = 2: sigma2 = (s3 + s1^3) / s1
    sigma.c1 = s.s1;
    sigma.c2 = gf_div(s.s3 + s1_cubed, s.s1);
    sigma.degree = 2;
    return sigma;
}

std::vector<int> chien_search(const LocatorPoly& sigma)
{
    std::vector<int> positions;
    if (!sigma.valid || sigma.degree == 0)
        return positions;
    for (int m = 0; m < kGfGroupOrder; m++) {
        GfElem x = gf_alpha_pow(m);
        GfElem v = GfElem(1) + gf_mul(sigma.c1, x) + gf_mul(sigma.c2, gf_mul(x, x));
        if (v.is_zero())
            positions.push_back((m + 14) % 15);
    }
    return positions;
}

DecodeOutcome bch_decode(const Codeword15& r)
{
    DecodeOutcome out;
    Syndromes s = bch_syndromes(r);
    if (s.all_zero()) {
        for (int i = 0; i < BchParams::k; i++)
            out.message[size_t(i)] = r[size_t(i)] & 1u;
        out.status = DecodeStatus::Clean;
        return out;
    }

    LocatorPoly sigma = bch_locator(s);
    std::vector<int> errs;
    bool ok = sigma.valid;
    if (ok) {
        errs = chien_search(sigma);
        ok = int(errs.size()) == sigma.degree;
    }

    if (!ok) {
        for (int i = 0; i < BchParams::k; i++)
            out.message[size_t(i)] = r[size_t(i)] & 1u;
        out.status = DecodeStatus::Uncorrectable;
        return out;
    }

    Codeword15 fixed = r;
    for (int p : errs)
        fixed[size_t(p)] ^= 1u;
    for (int i = 0; i < BchParams::k; i++)
        out.message[size_t(i)] = fixed[size_t(i)] & 1u;
    out.status = DecodeStatus::Corrected;
    out.corrected = uint8_t(errs.size());
    return out;
}

}  // namespace daqlink
