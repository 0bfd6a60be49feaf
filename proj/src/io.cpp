#include "daqlink/io.hpp"

#include <bit>
#include <fstream>
#include <sstream>

namespace daqlink {

namespace {

std::string trim(const std::string& s)
{
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

size_t data_bits_per_frame(SimMode mode)
{
    switch (mode) {
    case SimMode::Standard: return 48;
    case SimMode::NoFec: return 112;
    default: throw std::invalid_argument("file codec supports standard and nofec modes only");
    }
}

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text)
{
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        lineno++;
        size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw FormatError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw FormatError("config line " + std::to_string(lineno) + ": empty key");
        kv[key] = value;
    }
    return kv;
}

void apply_config_entry(CodecConfig& cfg, const std::string& key, const std::string& value)
{
    auto as_u16 = [&](const std::string& v) {
        unsigned long x = std::stoul(v, nullptr, 0);
        if (x > 0x1FFF)
            throw FormatError("config: " + key + " must fit in 13 bits");
        return uint16_t(x);
    };
    if (key == "scrambler.poly")
        cfg.scrambler.poly = as_u16(value);
    else if (key == "scrambler.seed0")
        cfg.scrambler.seeds[0] = as_u16(value);
    else if (key == "scrambler.seed1")
        cfg.scrambler.seeds[1] = as_u16(value);
    else if (key == "scrambler.seed2")
        cfg.scrambler.seeds[2] = as_u16(value);
    else if (key == "scrambler.seed3")
        cfg.scrambler.seeds[3] = as_u16(value);
    else if (key == "interleaver.table")
        cfg.interleaver = InterleaveMap::from_file(value);
    else
        throw FormatError("config: unknown key " + key);
}

CodecConfig codec_from_config_file(const std::string& path)
{
    CodecConfig cfg;
    auto kv = parse_config_text(read_text_file(path));
    for (const auto& [key, value] : kv)
        apply_config_entry(cfg, key, value);
    validate_scrambler(cfg.scrambler);
    return cfg;
}

std::vector<BitVec> payloads_from_bytes(const std::vector<uint8_t>& bytes, SimMode mode)
{
    size_t data_bits = data_bits_per_frame(mode);
    size_t width = payload_bits_per_frame(mode);
    BitVec all = bytes_to_bits(bytes);
    std::vector<BitVec> payloads;
    for (size_t off = 0; off < all.size(); off += data_bits) {
        BitVec payload(width, 0);  // slow control bits stay zero
        for (size_t i = 0; i < data_bits && off + i < all.size(); i++)
            payload[4 + i] = all[off + i];
        payloads.push_back(std::move(payload));
    }
    return payloads;
}

std::vector<uint8_t> payload_data_to_bytes(const std::vector<BitVec>& payloads, SimMode mode)
{
    size_t data_bits = data_bits_per_frame(mode);
    BitVec all;
    all.reserve(payloads.size() * data_bits);
    for (const BitVec& p : payloads)
        all.insert(all.end(), p.begin() + 4, p.begin() + long(4 + data_bits));
    return bits_to_bytes(all);
}

EncodeSummary encode_file(const std::string& in_path, const std::string& out_path, SimMode mode,
                          const CodecConfig& cfg)
{
    std::vector<uint8_t> bytes = read_binary_file(in_path);
    std::vector<BitVec> payloads = payloads_from_bytes(bytes, mode);

    std::ostringstream os;
    for (const BitVec& p : payloads) {
        Frame120 f = (mode == SimMode::Standard)
                         ? build_standard(StandardPayload::from_bits(p), cfg)
                         : build_nofec(NoFecPayload::from_bits(p), cfg);
        os << frame_to_hex(f.bits) << "\n";
    }
    os << "# bytes=" << bytes.size() << "\n";
    write_text_file(out_path, os.str());
    return EncodeSummary{bytes.size(), payloads.size()};
}

std::string DecodeSummary::text() const
{
    std::ostringstream os;
    os << "frames:               " << frames << "\n"
       << "output bytes:         " << output_bytes << "\n"
       << "corrected bits:       " << corrected_bits << "\n"
       << "corrected blocks:     " << corrected_blocks << "\n"
       << "uncorrectable blocks: " << uncorrectable_blocks << "\n"
       << "header mismatches:    " << header_mismatches << "\n";
    return os.str();
}

DecodeSummary decode_file(const std::string& in_path, const std::string& out_path, SimMode mode,
                          const std::string& format, const CodecConfig& cfg)
{
    DecodeSummary sum;
    std::vector<Frame120> frames;
    long long trailer_bytes = -1;
    FrameMode fm = (mode == SimMode::NoFec) ? FrameMode::NoFec : FrameMode::Standard;

    if (format == "hex") {
        std::istringstream is(read_text_file(in_path));
        std::string line;
        int lineno = 0;
        while (std::getline(is, line)) {
            lineno++;
            line = trim(line);
            if (line.empty())
                continue;
            if (line.rfind("# bytes=", 0) == 0) {
                trailer_bytes = std::stoll(line.substr(8));
                continue;
            }
            if (line[0] == '#')
                continue;
            try {
                frames.push_back(Frame120{hex_to_frame(line), fm});
            } catch (const std::invalid_argument& e) {
                throw FormatError("line " + std::to_string(lineno) + ": " + e.what());
            }
        }
    } else if (format == "raw") {
        BitVec stream = bytes_to_bits(read_binary_file(in_path));
        FrameAligner::Config acfg;
        acfg.accept_standard = (fm == FrameMode::Standard);
        acfg.accept_nofec = (fm == FrameMode::NoFec);
        FrameAligner aligner(acfg);
        frames = aligner.push_stream(stream);
    } else {
        throw std::invalid_argument("decode format must be hex or raw");
    }

    std::vector<BitVec> payloads;
    for (const Frame120& f : frames) {
        if (fm == FrameMode::Standard) {
            ParsedStandard p = parse_standard(f, cfg);
            payloads.push_back(p.payload.to_bits());
            sum.corrected_bits += p.status.corrected_bits;
            sum.corrected_blocks += uint64_t(std::popcount(p.status.corrected_mask));
            sum.uncorrectable_blocks += uint64_t(std::popcount(p.status.uncorrectable_mask));
            if (!p.status.header_ok)
                sum.header_mismatches++;
        } else {
            ParsedNoFec p = parse_nofec(f, cfg);
            payloads.push_back(p.payload.to_bits());
            if (!p.status.header_ok)
                sum.header_mismatches++;
        }
    }
    sum.frames = frames.size();

    std::vector<uint8_t> bytes = payload_data_to_bytes(payloads, mode);
    if (trailer_bytes >= 0 && size_t(trailer_bytes) <= bytes.size())
        bytes.resize(size_t(trailer_bytes));
    write_binary_file(out_path, bytes);
    sum.output_bytes = bytes.size();
    return sum;
}

SweepGrid parse_grid(const std::string& spec)
{
    SweepGrid g;
    size_t c1 = spec.find(':');
    size_t c2 = (c1 == std::string::npos) ? std::string::npos : spec.find(':', c1 + 1);
    try {
        if (c1 == std::string::npos) {
            g.start = g.stop = std::stod(spec);
            g.step = 1.0;
        } else if (c2 == std::string::npos) {
            g.start = std::stod(spec.substr(0, c1));
            g.stop = std::stod(spec.substr(c1 + 1));
            g.step = 1.0;
        } else {
            g.start = std::stod(spec.substr(0, c1));
            g.stop = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
            g.step = std::stod(spec.substr(c2 + 1));
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("grid: expected start:stop:step, got " + spec);
    }
    if (g.step <= 0.0 || g.stop < g.start)
        throw std::invalid_argument("grid: need stop >= start and step > 0");
    return g;
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path);
    out << text;
    if (!out)
        throw IoError("write failed on " + path);
}

std::vector<uint8_t> read_binary_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
    return data;
}

void write_binary_file(const std::string& path, const std::vector<uint8_t>& data)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path);
    out.write(reinterpret_cast<const char*>(data.data()), long(data.size()));
    if (!out)
        throw IoError("write failed on " + path);
}

}  // namespace daqlink
