// daqlink: frame codec, channel simulator and link emulator for a 120-bit
// framed, BCH(15,7,2)-protected serial protocol.
//
// Exit codes: 0 success, 1 usage error, 2 I/O error, 3 protocol/format error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

#include "daqlink/io.hpp"
#include "daqlink/net.hpp"
#include "daqlink/pipeline.hpp"
#include "daqlink/version.hpp"

using namespace daqlink;

namespace {

struct CodecFlags {
    std::string config_path;
    std::string perm_table;
    std::vector<std::string> scrambler_overrides;  // key=value pairs

    CodecConfig resolve() const
    {
        CodecConfig cfg;
        if (!config_path.empty())
            cfg = codec_from_config_file(config_path);
        for (const std::string& kv : scrambler_overrides) {
            size_t eq = kv.find('=');
            if (eq == std::string::npos)
                throw CLI::ValidationError("--set expects key=value");
            apply_config_entry(cfg, kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (!perm_table.empty())
            cfg.interleaver = InterleaveMap::from_file(perm_table);
        validate_scrambler(cfg.scrambler);
        return cfg;
    }
};

void add_codec_flags(CLI::App* cmd, CodecFlags& flags)
{
    cmd->add_option("--config", flags.config_path, "key = value config file");
    cmd->add_option("--perm-table", flags.perm_table, "interleaver permutation table file");
    cmd->add_option("--set", flags.scrambler_overrides,
                    "override a config entry, e.g. --set scrambler.seed0=0x1b57");
}

std::pair<std::string, uint16_t> parse_addr(const std::string& addr)
{
    size_t colon = addr.rfind(':');
    if (colon == std::string::npos)
        throw CLI::ValidationError("address must be host:port");
    std::string host = addr.substr(0, colon);
    int port = std::stoi(addr.substr(colon + 1));
    if (port < 0 || port > 65535)
        throw CLI::ValidationError("port out of range");
    if (host.empty())
        host = "127.0.0.1";
    return {host, uint16_t(port)};
}

ChannelConfig make_channel(const std::string& model, double p, double ebn0, double rate,
                           double burst_rate, double burst_len, double burst_p, uint64_t seed)
{
    ChannelConfig cfg;
    cfg.seed = seed;
    if (model == "bsc")
        cfg.model = BscModel{p};
    else if (model == "awgn")
        cfg.model = AwgnModel{ebn0, rate};
    else if (model == "burst")
        cfg.model = BurstModel{burst_rate, burst_len, burst_p};
    else
        throw CLI::ValidationError("model must be bsc, awgn or burst");
    validate_channel(cfg);
    return cfg;
}

void write_plot_data(const std::string& path, const std::vector<BerRecord>& records)
{
    std::string text;
    char buf[128];
    for (const BerRecord& r : records) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", r.ebn0_db, r.post_fec_ber);
        text += buf;
    }
    write_text_file(path, text);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{std::string(kToolName) + " " + kVersion};
    app.require_subcommand(1);

    // encode
    auto* enc = app.add_subcommand("encode", "raw bytes -> frame hex file");
    std::string enc_in, enc_out, enc_mode = "standard";
    CodecFlags enc_codec;
    enc->add_option("--in", enc_in, "input byte file")->required();
    enc->add_option("--out", enc_out, "output frame hex file")->required();
    enc->add_option("--mode", enc_mode, "standard|nofec")->check(CLI::IsMember({"standard", "nofec"}));
    add_codec_flags(enc, enc_codec);

    // decode
    auto* dec = app.add_subcommand("decode", "frame hex file or raw capture -> bytes");
    std::string dec_in, dec_out, dec_mode = "standard", dec_format = "hex";
    CodecFlags dec_codec;
    dec->add_option("--in", dec_in, "input file")->required();
    dec->add_option("--out", dec_out, "output byte file")->required();
    dec->add_option("--mode", dec_mode, "standard|nofec")->check(CLI::IsMember({"standard", "nofec"}));
    dec->add_option("--format", dec_format, "hex|raw")->check(CLI::IsMember({"hex", "raw"}));
    add_codec_flags(dec, dec_codec);

    // simulate (single point)
    auto* sim = app.add_subcommand("simulate", "one channel point -> CSV row");
    std::string sim_mode = "standard", sim_model = "bsc", sim_out;
    double sim_p = 0.0, sim_ebn0 = 0.0, sim_rate = -1.0;
    double sim_burst_rate = 1.0, sim_burst_len = 8.0, sim_burst_p = 1.0;
    uint64_t sim_frames = 10000, sim_seed = 0;
    CodecFlags sim_codec;
    sim->add_option("--mode", sim_mode, "standard|nofec|uncoded")
        ->check(CLI::IsMember({"standard", "nofec", "uncoded"}));
    sim->add_option("--model", sim_model, "bsc|awgn|burst")
        ->check(CLI::IsMember({"bsc", "awgn", "burst"}));
    sim->add_option("--p", sim_p, "BSC flip probability");
    sim->add_option("--ebn0", sim_ebn0, "Eb/N0 in dB (awgn model)");
    sim->add_option("--rate", sim_rate, "code rate override for the awgn map");
    sim->add_option("--burst-rate", sim_burst_rate, "burst starts per 10^4 bits");
    sim->add_option("--burst-len", sim_burst_len, "mean burst length");
    sim->add_option("--burst-p", sim_burst_p, "flip probability inside a burst");
    sim->add_option("--frames", sim_frames, "frames to simulate")->check(CLI::PositiveNumber);
    sim->add_option("--seed", sim_seed, "RNG seed")->required();
    sim->add_option("--out", sim_out, "CSV output path (default stdout)");
    add_codec_flags(sim, sim_codec);

    // sweep
    auto* swp = app.add_subcommand("sweep", "Eb/N0 sweep -> CSV");
    std::string swp_mode = "standard", swp_grid = "0:10:1", swp_out, swp_plot;
    uint64_t swp_frames = 10000, swp_seed = 0;
    bool swp_parallel = false;
    CodecFlags swp_codec;
    swp->add_option("--mode", swp_mode, "standard|nofec|uncoded")
        ->check(CLI::IsMember({"standard", "nofec", "uncoded"}));
    swp->add_option("--ebn0", swp_grid, "grid start:stop:step in dB");
    swp->add_option("--frames", swp_frames, "frames per point")->check(CLI::PositiveNumber);
    swp->add_option("--seed", swp_seed, "base RNG seed (point i uses seed+i)")->required();
    swp->add_option("--out", swp_out, "CSV output path (default stdout)");
    swp->add_option("--plot-data", swp_plot, "two-column ebn0/post-FEC-BER file");
    swp->add_flag("--parallel", swp_parallel, "run points concurrently (same output)");
    add_codec_flags(swp, swp_codec);

    // send
    auto* snd = app.add_subcommand("send", "stream a file to a receiver over TCP");
    std::string snd_addr, snd_in, snd_mode = "standard", snd_model;
    int snd_bit_offset = 0;
    double snd_p = 0.0, snd_ebn0 = 0.0, snd_rate = -1.0;
    uint64_t snd_seed = 0;
    bool snd_seed_set = false;
    CodecFlags snd_codec;
    snd->add_option("--connect", snd_addr, "receiver host:port")->required();
    snd->add_option("--in", snd_in, "input byte file")->required();
    snd->add_option("--mode", snd_mode, "standard|nofec")->check(CLI::IsMember({"standard", "nofec"}));
    snd->add_option("--bit-offset", snd_bit_offset, "prepend N junk bits")
        ->check(CLI::NonNegativeNumber);
    snd->add_option("--model", snd_model, "optional impairment: bsc|awgn");
    snd->add_option("--p", snd_p, "BSC flip probability");
    snd->add_option("--ebn0", snd_ebn0, "Eb/N0 in dB");
    snd->add_option("--rate", snd_rate, "code rate override for the awgn map");
    snd->add_option("--seed", snd_seed, "RNG seed for junk bits / impairment")
        ->each([&](const std::string&) { snd_seed_set = true; });
    add_codec_flags(snd, snd_codec);

    // recv
    auto* rcv = app.add_subcommand("recv", "receive a stream, align, decode, report metrics");
    std::string rcv_addr, rcv_out, rcv_mode = "standard";
    CodecFlags rcv_codec;
    rcv->add_option("--listen", rcv_addr, "listen host:port")->required();
    rcv->add_option("--out", rcv_out, "output byte file")->required();
    rcv->add_option("--mode", rcv_mode, "standard|nofec")->check(CLI::IsMember({"standard", "nofec"}));
    add_codec_flags(rcv, rcv_codec);

    // report
    auto* rep = app.add_subcommand("report", "line rate, data rates and efficiency");

    // dump-perm
    auto* dmp = app.add_subcommand("dump-perm", "print the interleaver permutation table");
    CodecFlags dmp_codec;
    add_codec_flags(dmp, dmp_codec);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*enc) {
            EncodeSummary s = encode_file(enc_in, enc_out, sim_mode_from_name(enc_mode),
                                          enc_codec.resolve());
            std::cout << "encoded " << s.input_bytes << " bytes into " << s.frames
                      << " frames\n";
        } else if (*dec) {
            DecodeSummary s = decode_file(dec_in, dec_out, sim_mode_from_name(dec_mode),
                                          dec_format, dec_codec.resolve());
            std::cout << s.text();
        } else if (*sim) {
            SimMode mode = sim_mode_from_name(sim_mode);
            double rate = sim_rate > 0 ? sim_rate
                                       : (mode == SimMode::Standard ? 7.0 / 15.0 : 1.0);
            ChannelConfig cfg = make_channel(sim_model, sim_p, sim_ebn0, rate, sim_burst_rate,
                                             sim_burst_len, sim_burst_p, sim_seed);
            BerRecord rec = run_ber_point(cfg, mode, sim_frames, sim_codec.resolve());
            std::string csv = records_to_csv({rec}, sim_seed);
            if (sim_out.empty())
                std::cout << csv;
            else
                write_text_file(sim_out, csv);
        } else if (*swp) {
            SimMode mode = sim_mode_from_name(swp_mode);
            SweepGrid grid = parse_grid(swp_grid);
            auto points = make_ebn0_sweep(grid.start, grid.stop, grid.step, swp_seed, mode);
            auto records = sweep(points, mode, swp_frames, swp_codec.resolve(), swp_parallel);
            std::string csv = records_to_csv(records, swp_seed);
            if (swp_out.empty())
                std::cout << csv;
            else
                write_text_file(swp_out, csv);
            if (!swp_plot.empty())
                write_plot_data(swp_plot, records);
        } else if (*snd) {
            auto [host, port] = parse_addr(snd_addr);
            SendOptions opts;
            opts.mode = sim_mode_from_name(snd_mode);
            opts.codec = snd_codec.resolve();
            opts.bit_offset = snd_bit_offset;
            if (!snd_model.empty()) {
                if (!snd_seed_set)
                    throw CLI::ValidationError("--seed is required with an impairment model");
                double rate = snd_rate > 0 ? snd_rate
                                           : (opts.mode == SimMode::Standard ? 7.0 / 15.0 : 1.0);
                opts.impairment =
                    make_channel(snd_model, snd_p, snd_ebn0, rate, 0.0, 1.0, 1.0, snd_seed);
            }
            if (snd_bit_offset > 0 && !snd_seed_set)
                throw CLI::ValidationError("--seed is required with --bit-offset");
            opts.junk_seed = snd_seed;
            send_file_tcp(host, port, snd_in, opts);
            std::cout << "sent " << snd_in << " to " << host << ":" << port << "\n";
        } else if (*rcv) {
            auto [host, port] = parse_addr(rcv_addr);
            (void)host;  // loopback listener
            int lfd = tcp_listen(port);
            std::cout << "listening on port " << tcp_bound_port(lfd) << std::endl;
            RecvOutcome out = recv_to_file_tcp(lfd, rcv_out, sim_mode_from_name(rcv_mode),
                                               rcv_codec.resolve());
            tcp_close(lfd);
            std::cout << out.metrics.summary();
            if (!out.clean_eof)
                std::cout << "note: connection ended early; metrics cover the partial stream\n";
        } else if (*rep) {
            std::cout << efficiency_text(efficiency_report());
        } else if (*dmp) {
            const InterleaveMap& map = dmp_codec.resolve().interleaver;
            for (int i = 0; i < kFrameBits; i++)
                std::cout << map.dest(i) << "\n";
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
