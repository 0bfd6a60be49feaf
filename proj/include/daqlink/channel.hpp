#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "daqlink/bits.hpp"

namespace daqlink {

// xoshiro256** with splitmix64 seeding. Pinned here (rather than relying on
// library distributions) so identical seeds give identical simulations on
// every platform and toolchain. The algorithm name is recorded in output
// file headers.
class SimRng {
public:
    explicit SimRng(uint64_t seed);

    uint64_t next_u64();
    double next_double();          // uniform in [0, 1)
    bool bernoulli(double p) { return next_double() < p; }
    uint32_t below(uint32_t bound);  // uniform in [0, bound)

    static constexpr const char* algorithm() { return "xoshiro256**"; }

private:
    uint64_t s_[4];
};

// Standard normal tail probability Q(x) = P(N(0,1) > x).
double qfunc(double x);

// Hard-decision BPSK over AWGN: flip probability for a stream whose
// information bits carry energy Eb spread over 1/R channel bits.
double ebn0_to_p(double ebn0_db, double code_rate);

struct BscModel {
    double p = 0.0;  // in [0, 0.5]
};

struct AwgnModel {
    double ebn0_db = 0.0;
    double code_rate = 1.0;  // in (0, 1]
};

struct BurstModel {
    double arrival_rate = 0.0;      // expected burst starts per 10^4 bits
    double mean_len = 1.0;          // geometric mean burst length, >= 1
    double flip_prob_in_burst = 1.0;
};

struct CompositeModel;

using ChannelModel = std::variant<BscModel, AwgnModel, BurstModel, CompositeModel>;

struct CompositeModel {
    std::vector<ChannelModel> stages;
};

struct ChannelConfig {
    ChannelModel model = BscModel{};
    uint64_t seed = 0;
};

void validate_channel(const ChannelConfig& cfg);  // throws on out-of-range parameters

// All error injectors return the flip count alongside the damaged stream and
// are pure functions of (input, parameters, generator state).
struct ChannelResult {
    BitVec bits;
    uint64_t flips = 0;
};

ChannelResult bsc_apply(const BitVec& stream, double p, SimRng& rng);
ChannelResult burst_apply(const BitVec& stream, const BurstModel& cfg, SimRng& rng);
ChannelResult channel_apply(const BitVec& stream, const ChannelModel& model, SimRng& rng);

// Deterministic variant for exhaustive burst sweeps: flips exactly the
// contiguous range [offset, offset+length), clipped to the stream end.
ChannelResult burst_at(const BitVec& stream, size_t offset, size_t length);

// Flip probability a model induces on each channel bit (burst models return
// the stationary average).
double model_flip_probability(const ChannelModel& model);

std::string model_name(const ChannelModel& model);

}  // namespace daqlink
