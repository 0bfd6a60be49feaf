#include <doctest.h>

#include <stdexcept>
#include <cmath>

#include "daqlink/channel.hpp"

using namespace daqlink;

namespace {

// Numerical-integration oracle for the normal tail: trapezoidal rule over
// the density from x out to x + 12 sigma, fine enough for 1e-7 accuracy.
double qfunc_oracle(double x)
{
    const double hi = x + 12.0;
    const int n = 400000;
    const double h = (hi - x) / n;
    auto pdf = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * M_PI); };
    double acc = 0.5 * (pdf(x) + pdf(hi));
    for (int i = 1; i < n; i++)
        acc += pdf(x + i * h);
    return acc * h;
}

}  // namespace

TEST_CASE("qfunc against the integration oracle")
{
    CHECK(qfunc(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    for (double x : {0.25, 0.5, 1.0, 1.2816, 1.5, 2.0, 3.0, 4.0}) {
        double oracle = qfunc_oracle(x);
        CHECK(std::abs(qfunc(x) - oracle) / oracle < 1e-6);
    }
    // 10% tail quantile
    CHECK(qfunc(1.2816) == doctest::Approx(0.1000).epsilon(1e-3));
    // symmetry
    for (double x : {0.1, 0.7, 1.9, 2.5})
        CHECK(qfunc(-x) == doctest::Approx(1.0 - qfunc(x)).epsilon(1e-12));
    // monotone decreasing
    double prev = 1.0;
    for (double x = -4.0; x <= 4.0; x += 0.125) {
        CHECK(qfunc(x) < prev);
        prev = qfunc(x);
    }
}

TEST_CASE("ebn0_to_p mapping")
{
    // 0 dB uncoded: Q(sqrt(2))
    CHECK(ebn0_to_p(0.0, 1.0) == doctest::Approx(qfunc(std::sqrt(2.0))).epsilon(1e-12));
    CHECK(ebn0_to_p(0.0, 1.0) == doctest::Approx(0.0786).epsilon(2e-3));

    // monotone decreasing in Eb/N0, and almost zero at high Eb/N0
    double prev = 1.0;
    for (double db = 0.0; db <= 12.0; db += 0.5) {
        double p = ebn0_to_p(db, 7.0 / 15.0);
        CHECK(p < prev);
        prev = p;
    }
    CHECK(ebn0_to_p(40.0, 1.0) < 1e-12);

    // spreading energy over more channel bits raises the raw flip rate
    for (double db = 0.0; db <= 10.0; db += 1.0)
        CHECK(ebn0_to_p(db, 7.0 / 15.0) > ebn0_to_p(db, 1.0));

    CHECK_THROWS_AS(ebn0_to_p(3.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ebn0_to_p(3.0, 1.5), std::invalid_argument);
}

TEST_CASE("rng is deterministic and splits cleanly by seed")
{
    SimRng a(42), b(42), c(43);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 1000; i++) {
        uint64_t x = a.next_u64(), y = b.next_u64(), z = c.next_u64();
        all_equal = all_equal && (x == y);
        any_diff = any_diff || (x != z);
    }
    CHECK(all_equal);
    CHECK(any_diff);

    SimRng d(7);
    for (int i = 0; i < 10000; i++) {
        double u = d.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("bsc_apply identity, determinism and flip accounting")
{
    BitVec stream(5000, 0);
    SimRng rng(1);
    ChannelResult r = bsc_apply(stream, 0.0, rng);
    CHECK(r.bits == stream);
    CHECK(r.flips == 0);

    SimRng r1(99), r2(99);
    ChannelResult a = bsc_apply(stream, 0.1, r1);
    ChannelResult b = bsc_apply(stream, 0.1, r2);
    CHECK(a.bits == b.bits);
    CHECK(a.flips == b.flips);

    uint64_t counted = 0;
    for (size_t i = 0; i < stream.size(); i++)
        counted += a.bits[i] != stream[i];
    CHECK(counted == a.flips);

    CHECK_THROWS_AS(bsc_apply(stream, 0.7, r1), std::invalid_argument);
}

TEST_CASE("bsc_apply empirical rate stays within 3 binomial sigmas")
{
    // p = 0.5 on 1e6 bits, then a grid of small p on 1e5+ bits
    {
        BitVec stream(1000000, 1);
        SimRng rng(1234);
        ChannelResult r = bsc_apply(stream, 0.5, rng);
        double n = double(stream.size());
        double sigma = std::sqrt(0.5 * 0.5 / n);
        CHECK(std::abs(double(r.flips) / n - 0.5) < 3 * sigma);
    }
    size_t n = 300000;
    BitVec stream(n, 0);
    int point = 0;
    for (double p : {1e-3, 1e-2, 1e-1}) {
        SimRng rng(uint64_t(5000 + point++));
        ChannelResult r = bsc_apply(stream, p, rng);
        double sigma = std::sqrt(p * (1 - p) / double(n));
        CHECK(std::abs(double(r.flips) / double(n) - p) < 3 * sigma);
    }
}

TEST_CASE("burst_at flips exactly the requested range")
{
    BitVec stream(100, 0);
    ChannelResult r = burst_at(stream, 10, 5);
    CHECK(r.flips == 5);
    for (size_t i = 0; i < stream.size(); i++)
        CHECK(r.bits[i] == (i >= 10 && i < 15 ? 1 : 0));

    // clipped at the end
    ChannelResult c = burst_at(stream, 98, 5);
    CHECK(c.flips == 2);
    CHECK(c.bits[97] == 0);
    CHECK(c.bits[98] == 1);
    CHECK(c.bits[99] == 1);
}

TEST_CASE("burst_apply rate-zero identity, determinism, mean length")
{
    BitVec stream(200000, 0);
    SimRng rng(1);
    BurstModel off{0.0, 8.0, 1.0};
    ChannelResult r = burst_apply(stream, off, rng);
    CHECK(r.bits == stream);
    CHECK(r.flips == 0);

    BurstModel cfg{2.0, 8.0, 1.0};  // 2 bursts per 1e4 bits, mean length 8
    SimRng r1(77), r2(77);
    ChannelResult a = burst_apply(stream, cfg, r1);
    ChannelResult b = burst_apply(stream, cfg, r2);
    CHECK(a.bits == b.bits);
    CHECK(a.flips > 0);

    // with flip probability 1, flips/bursts estimates the mean burst length
    size_t bursts = 0;
    bool in_burst = false;
    for (uint8_t bit : a.bits) {
        if (bit && !in_burst)
            bursts++;
        in_burst = bit;
    }
    double mean_len = double(a.flips) / double(bursts);
    CHECK(mean_len > 5.0);
    CHECK(mean_len < 12.0);
}

TEST_CASE("channel config validation and composite application")
{
    ChannelConfig bad;
    bad.model = BscModel{0.9};
    CHECK_THROWS_AS(validate_channel(bad), std::invalid_argument);

    ChannelConfig burst_bad;
    burst_bad.model = BurstModel{-1.0, 8.0, 1.0};
    CHECK_THROWS_AS(validate_channel(burst_bad), std::invalid_argument);

    CompositeModel combo;
    combo.stages.push_back(BscModel{0.01});
    combo.stages.push_back(BurstModel{1.0, 8.0, 1.0});
    ChannelConfig cfg;
    cfg.model = combo;
    cfg.seed = 5;
    validate_channel(cfg);

    BitVec stream(50000, 0);
    SimRng rng(cfg.seed);
    ChannelResult r = channel_apply(stream, cfg.model, rng);
    CHECK(r.flips > 0);
    CHECK(model_name(cfg.model) == "composite");
    CHECK(model_flip_probability(cfg.model) > 0.01);
}

TEST_CASE("awgn model applies the mapped probability")
{
    BitVec stream(200000, 0);
    AwgnModel m{4.0, 1.0};
    double p = ebn0_to_p(4.0, 1.0);
    SimRng rng(31337);
    ChannelResult r = channel_apply(stream, m, rng);
    double sigma = std::sqrt(p * (1 - p) / double(stream.size()));
    CHECK(std::abs(double(r.flips) / double(stream.size()) - p) < 3 * sigma);
    CHECK(model_flip_probability(ChannelModel{m}) == doctest::Approx(p));
}
