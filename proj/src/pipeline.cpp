#include "daqlink/pipeline.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>
#include <stdexcept>

#include "daqlink/version.hpp"

namespace daqlink {

namespace {

constexpr uint64_t kChannelSeedSalt = 0x6368616E6E656Cull;  // decorrelates data and noise streams

std::string fmt_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

BitVec random_payload(SimRng& rng, size_t nbits)
{
    BitVec bits(nbits);
    for (auto& b : bits)
        b = uint8_t(rng.next_u64() & 1u);
    return bits;
}

}  // namespace

std::string sim_mode_name(SimMode m)
{
    switch (m) {
    case SimMode::Standard: return "standard";
    case SimMode::NoFec: return "nofec";
    case SimMode::Uncoded: return "uncoded";
    }
    return "?";
}

SimMode sim_mode_from_name(const std::string& s)
{
    if (s == "standard")
        return SimMode::Standard;
    if (s == "nofec")
        return SimMode::NoFec;
    if (s == "uncoded")
        return SimMode::Uncoded;
    throw std::invalid_argument("unknown mode: " + s);
}

size_t payload_bits_per_frame(SimMode m)
{
    return m == SimMode::NoFec ? 116 : 52;
}

EfficiencyReport efficiency_report(const RateModel& rates)
{
    EfficiencyReport r{};
    double write_rate = rates.frame_clock_hz * rates.frame_bits;
    double read_rate = rates.word_clock_hz * rates.word_bits;
    if (write_rate != read_rate)
        throw std::invalid_argument("rate model: frame and word clock domains disagree");
    r.line_rate_gbps = write_rate / 1e9;
    r.standard_data_gbps = rates.frame_clock_hz * 52 / 1e9;
    r.nofec_data_gbps = rates.frame_clock_hz * 116 / 1e9;
    r.standard_efficiency_pct = 100.0 * 52 / rates.frame_bits;
    r.nofec_efficiency_pct = 100.0 * 116 / rates.frame_bits;
    r.code_rate = 7.0 / 15.0;
    return r;
}

std::string efficiency_text(const EfficiencyReport& r)
{
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "line rate:            %.2f Gbps\n"
                  "standard data rate:   %.2f Gbps\n"
                  "no-FEC data rate:     %.2f Gbps\n"
                  "standard efficiency:  %.2f %%\n"
                  "no-FEC efficiency:    %.2f %%\n"
                  "BCH(15,7) code rate:  %.3f\n",
                  r.line_rate_gbps, r.standard_data_gbps, r.nofec_data_gbps,
                  r.standard_efficiency_pct, r.nofec_efficiency_pct, r.code_rate);
    return buf;
}

std::string LinkMetrics::summary() const
{
    std::ostringstream os;
    os << "frames tx/rx/compared: " << frames_tx << "/" << frames_rx << "/" << frames_compared
       << "\n"
       << "pre-FEC  bit errors:   " << pre_fec_bit_errors << " / " << channel_bits
       << " (ber=" << fmt_double(pre_fec_ber()) << ")\n"
       << "post-FEC bit errors:   " << post_fec_bit_errors << " / " << payload_bits
       << " (ber=" << fmt_double(post_fec_ber()) << ")\n"
       << "frame errors:          " << frame_errors << " (fer=" << fmt_double(fer()) << ")\n"
       << "corrected blocks:      " << corrected_blocks << "\n"
       << "uncorrectable blocks:  " << uncorrectable_blocks << "\n"
       << "header mismatches:     " << header_mismatches << "\n"
       << "lock latency (bits):   " << lock_latency_bits << "\n";
    return os.str();
}

BitVec tx_chain(const std::vector<BitVec>& payloads, SimMode mode, const CodecConfig& cfg)
{
    BitVec stream;
    if (mode == SimMode::Uncoded) {
        for (const BitVec& p : payloads)
            stream.insert(stream.end(), p.begin(), p.end());
        return stream;
    }
    stream.reserve(payloads.size() * kFrameBits);
    std::vector<Word40> words;
    words.reserve(payloads.size() * 3);
    for (const BitVec& p : payloads) {
        Frame120 f = (mode == SimMode::Standard)
                         ? build_standard(StandardPayload::from_bits(p), cfg)
                         : build_nofec(NoFecPayload::from_bits(p), cfg);
        auto w = frame_to_words(f);
        words.insert(words.end(), w.begin(), w.end());
    }
    return serialize_words(words);
}

RxResult rx_chain(const BitVec& stream, SimMode mode, const RxOptions& opts,
                  const CodecConfig& cfg)
{
    RxResult out;
    LinkMetrics& m = out.metrics;
    if (opts.expected)
        m.frames_tx = opts.expected->size();

    if (mode == SimMode::Uncoded) {
        size_t width = payload_bits_per_frame(mode);
        size_t n = stream.size() / width;
        for (size_t i = 0; i < n; i++)
            out.payloads.emplace_back(stream.begin() + long(i * width),
                                      stream.begin() + long((i + 1) * width));
        m.frames_rx = n;
        if (opts.expected) {
            size_t compared = std::min(out.payloads.size(), opts.expected->size());
            size_t rb = out.payloads.size() - compared;
            size_t eb = opts.expected->size() - compared;
            for (size_t i = 0; i < compared; i++) {
                size_t d = hamming_distance(out.payloads[rb + i], (*opts.expected)[eb + i]);
                m.pre_fec_bit_errors += d;
                m.post_fec_bit_errors += d;
                m.payload_bits += width;
                m.channel_bits += width;
                m.frames_compared++;
                if (d)
                    m.frame_errors++;
            }
        }
        return out;
    }

    std::vector<Frame120> frames;
    std::vector<FrameStatus> statuses;
    if (opts.use_aligner) {
        FrameAligner aligner;
        frames = aligner.push_stream(stream);
        m.lock_latency_bits = aligner.lock_status().lock_latency_bits;
    } else {
        if (stream.size() % kFrameBits != 0)
            throw std::invalid_argument("rx_chain: pre-aligned stream must be whole frames");
        FrameMode fm = opts.assumed_mode;
        for (size_t i = 0; i + kFrameBits <= stream.size(); i += kFrameBits)
            frames.push_back(Frame120{BitVec(stream.begin() + long(i),
                                             stream.begin() + long(i + kFrameBits)),
                                      fm});
    }
    m.frames_rx = frames.size();

    statuses.reserve(frames.size());
    for (const Frame120& f : frames) {
        if (f.mode == FrameMode::Standard) {
            ParsedStandard p = parse_standard(f, cfg);
            out.payloads.push_back(p.payload.to_bits());
            statuses.push_back(p.status);
        } else {
            ParsedNoFec p = parse_nofec(f, cfg);
            out.payloads.push_back(p.payload.to_bits());
            statuses.push_back(p.status);
        }
        const FrameStatus& st = statuses.back();
        m.corrected_blocks += uint64_t(std::popcount(st.corrected_mask));
        m.uncorrectable_blocks += uint64_t(std::popcount(st.uncorrectable_mask));
        if (!st.header_ok)
            m.header_mismatches++;
    }

    if (opts.expected) {
        // Frames consumed while acquiring lock are training loss; the emitted
        // frames correspond to the tail of the transmitted sequence.
        size_t compared = std::min(frames.size(), opts.expected->size());
        size_t rb = frames.size() - compared;
        size_t eb = opts.expected->size() - compared;
        for (size_t i = 0; i < compared; i++) {
            const BitVec& exp_payload = (*opts.expected)[eb + i];
            Frame120 reencoded = (mode == SimMode::Standard)
                                     ? build_standard(StandardPayload::from_bits(exp_payload), cfg)
                                     : build_nofec(NoFecPayload::from_bits(exp_payload), cfg);
            m.pre_fec_bit_errors += hamming_distance(frames[rb + i].bits, reencoded.bits);
            m.channel_bits += kFrameBits;

            size_t d = hamming_distance(out.payloads[rb + i], exp_payload);
            m.post_fec_bit_errors += d;
            m.payload_bits += exp_payload.size();
            m.frames_compared++;
            if (d)
                m.frame_errors++;
        }
    }
    return out;
}

BerRecord run_ber_point(const ChannelConfig& cfg, SimMode mode, uint64_t n_frames,
                        const CodecConfig& codec)
{
    validate_channel(cfg);
    if (n_frames < 1)
        throw std::invalid_argument("run_ber_point: need at least one frame");

    SimRng data_rng(cfg.seed);
    SimRng chan_rng(cfg.seed ^ kChannelSeedSalt);

    size_t width = payload_bits_per_frame(mode);
    std::vector<BitVec> payloads;
    payloads.reserve(n_frames);
    for (uint64_t i = 0; i < n_frames; i++)
        payloads.push_back(random_payload(data_rng, width));

    BitVec stream = tx_chain(payloads, mode, codec);
    ChannelResult damaged = channel_apply(stream, cfg.model, chan_rng);

    RxOptions opts;
    opts.use_aligner = false;  // BER runs measure an established link
    opts.assumed_mode = (mode == SimMode::NoFec) ? FrameMode::NoFec : FrameMode::Standard;
    opts.expected = &payloads;
    RxResult rx = rx_chain(damaged.bits, mode, opts, codec);

    BerRecord rec;
    const AwgnModel* awgn = std::get_if<AwgnModel>(&cfg.model);
    rec.ebn0_db = awgn ? awgn->ebn0_db : std::nan("");
    rec.p_channel = model_flip_probability(cfg.model);
    rec.mode = mode;
    rec.frames = rx.metrics.frames_compared;
    rec.payload_bits = rx.metrics.payload_bits;
    rec.pre_fec_ber = rx.metrics.pre_fec_ber();
    rec.post_fec_ber = rx.metrics.post_fec_ber();
    rec.fer = rx.metrics.fer();
    rec.corrected_blocks = rx.metrics.corrected_blocks;
    rec.uncorrectable_blocks = rx.metrics.uncorrectable_blocks;
    rec.seed = cfg.seed;
    return rec;
}

std::vector<BerRecord> sweep(const std::vector<ChannelConfig>& points, SimMode mode,
                             uint64_t n_frames, const CodecConfig& codec, bool parallel)
{
    std::vector<BerRecord> records(points.size());
    if (!parallel) {
        for (size_t i = 0; i < points.size(); i++)
            records[i] = run_ber_point(points[i], mode, n_frames, codec);
        return records;
    }
    std::vector<std::future<BerRecord>> futures;
    futures.reserve(points.size());
    for (const ChannelConfig& pt : points)
        futures.push_back(std::async(std::launch::async, [&, pt] {
            return run_ber_point(pt, mode, n_frames, codec);
        }));
    for (size_t i = 0; i < futures.size(); i++)
        records[i] = futures[i].get();
    return records;
}

std::vector<ChannelConfig> make_ebn0_sweep(double start_db, double stop_db, double step_db,
                                           uint64_t base_seed, SimMode mode)
{
    if (step_db <= 0.0)
        throw std::invalid_argument("sweep grid: step must be positive");
    double code_rate = (mode == SimMode::Standard) ? 7.0 / 15.0 : 1.0;
    std::vector<ChannelConfig> points;
    int n = int(std::floor((stop_db - start_db) / step_db + 1e-9)) + 1;
    if (n < 1)
        throw std::invalid_argument("sweep grid: empty range");
    for (int i = 0; i < n; i++) {
        ChannelConfig cfg;
        cfg.model = AwgnModel{start_db + i * step_db, code_rate};
        cfg.seed = base_seed + uint64_t(i);
        points.push_back(cfg);
    }
    return points;
}

std::string records_to_csv(const std::vector<BerRecord>& records, uint64_t base_seed)
{
    std::ostringstream os;
    os << "# " << kToolName << " " << kVersion << " ber records\n";
    os << "# rng=" << SimRng::algorithm() << " base_seed=" << base_seed << "\n";
    os << "ebn0_db,p_channel,mode,frames,payload_bits,pre_fec_ber,post_fec_ber,fer,"
          "corrected_blocks,uncorrectable_blocks,seed\n";
    for (const BerRecord& r : records) {
        os << fmt_double(r.ebn0_db) << ',' << fmt_double(r.p_channel) << ','
           << sim_mode_name(r.mode) << ',' << r.frames << ',' << r.payload_bits << ','
           << fmt_double(r.pre_fec_ber) << ',' << fmt_double(r.post_fec_ber) << ','
           << fmt_double(r.fer) << ',' << r.corrected_blocks << ',' << r.uncorrectable_blocks
           << ',' << r.seed << "\n";
    }
    return os.str();
}

std::vector<BerRecord> csv_to_records(const std::string& text)
{
    std::vector<BerRecord> records;
    std::istringstream is(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        if (!header_seen) {
            header_seen = true;  // column header line
            continue;
        }
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ','))
            fields.push_back(field);
        if (fields.size() != 11)
            throw std::invalid_argument("csv: expected 11 fields per record");
        BerRecord r;
        r.ebn0_db = std::strtod(fields[0].c_str(), nullptr);
        r.p_channel = std::strtod(fields[1].c_str(), nullptr);
        r.mode = sim_mode_from_name(fields[2]);
        r.frames = std::strtoull(fields[3].c_str(), nullptr, 10);
        r.payload_bits = std::strtoull(fields[4].c_str(), nullptr, 10);
        r.pre_fec_ber = std::strtod(fields[5].c_str(), nullptr);
        r.post_fec_ber = std::strtod(fields[6].c_str(), nullptr);
        r.fer = std::strtod(fields[7].c_str(), nullptr);
        r.corrected_blocks = std::strtoull(fields[8].c_str(), nullptr, 10);
        r.uncorrectable_blocks = std::strtoull(fields[9].c_str(), nullptr, 10);
        r.seed = std::strtoull(fields[10].c_str(), nullptr, 10);
        records.push_back(r);
    }
    return records;
}

}  // namespace daqlink
