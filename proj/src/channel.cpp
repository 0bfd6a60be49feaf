#include "daqlink/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace daqlink {

namespace {

uint64_t splitmix64(uint64_t& x)
{
    x += 0x9E3779B97F4A7C15ull;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline uint64_t rotl(uint64_t x, int k)
{
    return (x << k) | (x >> (64 - k));
}

}  // namespace

SimRng::SimRng(uint64_t seed)
{
    uint64_t sm = seed;
    for (auto& s : s_)
        s = splitmix64(sm);
}

uint64_t SimRng::next_u64()
{
    uint64_t result = rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double SimRng::next_double()
{
    return double(next_u64() >> 11) * 0x1.0p-53;
}

uint32_t SimRng::below(uint32_t bound)
{
    return uint32_t(next_double() * bound);
}

double qfunc(double x)
{
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double ebn0_to_p(double ebn0_db, double code_rate)
{
    if (!(code_rate > 0.0 && code_rate <= 1.0))
        throw std::invalid_argument("ebn0_to_p: code rate must be in (0,1]");
    double ebn0 = std::pow(10.0, ebn0_db / 10.0);
    return qfunc(std::sqrt(2.0 * code_rate * ebn0));
}

void validate_channel(const ChannelConfig& cfg)
{
    struct Visitor {
        void operator()(const BscModel& m) const
        {
            if (!(m.p >= 0.0 && m.p <= 0.5))
                throw std::invalid_argument("channel: BSC p must be in [0, 0.5]");
        }
        void operator()(const AwgnModel& m) const
        {
            if (!(m.code_rate > 0.0 && m.code_rate <= 1.0))
                throw std::invalid_argument("channel: code rate must be in (0,1]");
            if (!std::isfinite(m.ebn0_db))
                throw std::invalid_argument("channel: Eb/N0 must be finite");
        }
        void operator()(const BurstModel& m) const
        {
            if (m.arrival_rate < 0.0)
                throw std::invalid_argument("channel: burst arrival rate must be >= 0");
            if (m.mean_len < 1.0)
                throw std::invalid_argument("channel: burst mean length must be >= 1");
            if (!(m.flip_prob_in_burst >= 0.0 && m.flip_prob_in_burst <= 1.0))
                throw std::invalid_argument("channel: in-burst flip probability must be in [0,1]");
        }
        void operator()(const CompositeModel& m) const
        {
            for (const auto& stage : m.stages)
                std::visit(*this, stage);
        }
    };
    std::visit(Visitor{}, cfg.model);
}

ChannelResult bsc_apply(const BitVec& stream, double p, SimRng& rng)
{
    if (!(p >= 0.0 && p <= 0.5))
        throw std::invalid_argument("bsc_apply: p must be in [0, 0.5]");
    ChannelResult r{stream, 0};
    if (p == 0.0)
        return r;
    for (auto& b : r.bits) {
        if (rng.bernoulli(p)) {
            b ^= 1u;
            r.flips++;
        }
    }
    return r;
}

ChannelResult burst_apply(const BitVec& stream, const BurstModel& cfg, SimRng& rng)
{
    ChannelResult r{stream, 0};
    double start_p = cfg.arrival_rate / 1e4;
    if (start_p <= 0.0)
        return r;
    double continue_p = 1.0 - 1.0 / cfg.mean_len;  // geometric length, mean mean_len
    size_t i = 0;
    while (i < r.bits.size()) {
        if (!rng.bernoulli(start_p)) {
            i++;
            continue;
        }
        do {
            if (i < r.bits.size() && rng.bernoulli(cfg.flip_prob_in_burst)) {
                r.bits[i] ^= 1u;
                r.flips++;
            }
            i++;
        } while (i < r.bits.size() && rng.bernoulli(continue_p));
    }
    return r;
}

ChannelResult burst_at(const BitVec& stream, size_t offset, size_t length)
{
    ChannelResult r{stream, 0};
    for (size_t i = offset; i < offset + length && i < r.bits.size(); i++) {
        r.bits[i] ^= 1u;
        r.flips++;
    }
    return r;
}

ChannelResult channel_apply(const BitVec& stream, const ChannelModel& model, SimRng& rng)
{
    struct Visitor {
        const BitVec& in;
        SimRng& rng;
        ChannelResult operator()(const BscModel& m) const { return bsc_apply(in, m.p, rng); }
        ChannelResult operator()(const AwgnModel& m) const
        {
            return bsc_apply(in, ebn0_to_p(m.ebn0_db, m.code_rate), rng);
        }
        ChannelResult operator()(const BurstModel& m) const { return burst_apply(in, m, rng); }
        ChannelResult operator()(const CompositeModel& m) const
        {
            ChannelResult acc{in, 0};
            for (const auto& stage : m.stages) {
                ChannelResult step = std::visit(Visitor{acc.bits, rng}, stage);
                acc.bits = std::move(step.bits);
                acc.flips += step.flips;
            }
            return acc;
        }
    };
    return std::visit(Visitor{stream, rng}, model);
}

double model_flip_probability(const ChannelModel& model)
{
    struct Visitor {
        double operator()(const BscModel& m) const { return m.p; }
        double operator()(const AwgnModel& m) const { return ebn0_to_p(m.ebn0_db, m.code_rate); }
        double operator()(const BurstModel& m) const
        {
            // stationary fraction of bits inside a burst times the in-burst rate
            double per_bit = m.arrival_rate / 1e4;
            return per_bit * m.mean_len * m.flip_prob_in_burst / (1.0 + per_bit * m.mean_len);
        }
        double operator()(const CompositeModel& m) const
        {
            double q = 0.0;  // XOR of independent per-stage flips
            for (const auto& stage : m.stages) {
                double p = std::visit(Visitor{}, stage);
                q = q * (1.0 - p) + (1.0 - q) * p;
            }
            return q;
        }
    };
    return std::visit(Visitor{}, model);
}

std::string model_name(const ChannelModel& model)
{
    struct Visitor {
        std::string operator()(const BscModel&) const { return "bsc"; }
        std::string operator()(const AwgnModel&) const { return "awgn"; }
        std::string operator()(const BurstModel&) const { return "burst"; }
        std::string operator()(const CompositeModel&) const { return "composite"; }
    };
    return std::visit(Visitor{}, model);
}

}  // namespace daqlink
