#include "daqlink/net.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <bit>
#include <cerrno>
#include <cstring>

namespace daqlink {

StreamReceiver::StreamReceiver(SimMode mode, const CodecConfig& cfg)
    : mode_(mode), cfg_(cfg)
{
    FrameAligner::Config acfg;
    acfg.accept_standard = (mode != SimMode::NoFec);
    acfg.accept_nofec = (mode == SimMode::NoFec);
    aligner_ = FrameAligner(acfg);
}

void StreamReceiver::feed(const uint8_t* data, size_t len)
{
    for (size_t i = 0; i < len; i++) {
        for (int b = 7; b >= 0; b--) {
            auto frame = aligner_.push(uint8_t((data[i] >> b) & 1u));
            if (!frame)
                continue;
            if (frame->mode == FrameMode::Standard) {
                ParsedStandard p = parse_standard(*frame, cfg_);
                payloads_.push_back(p.payload.to_bits());
                metrics_.corrected_blocks += uint64_t(std::popcount(p.status.corrected_mask));
                metrics_.uncorrectable_blocks +=
                    uint64_t(std::popcount(p.status.uncorrectable_mask));
                if (!p.status.header_ok)
                    metrics_.header_mismatches++;
            } else {
                ParsedNoFec p = parse_nofec(*frame, cfg_);
                payloads_.push_back(p.payload.to_bits());
                if (!p.status.header_ok)
                    metrics_.header_mismatches++;
            }
        }
    }
}

LinkMetrics StreamReceiver::metrics() const
{
    LinkMetrics m = metrics_;
    m.frames_rx = aligner_.lock_status().frames_emitted;
    m.lock_latency_bits = aligner_.lock_status().lock_latency_bits;
    return m;
}

BitVec build_wire_stream(const std::vector<BitVec>& payloads, const SendOptions& opts)
{
    BitVec stream = tx_chain(payloads, opts.mode, opts.codec);
    if (opts.impairment) {
        validate_channel(*opts.impairment);
        SimRng rng(opts.impairment->seed);
        stream = channel_apply(stream, opts.impairment->model, rng).bits;
    }
    if (opts.bit_offset > 0) {
        SimRng rng(opts.junk_seed);
        BitVec junk(size_t(opts.bit_offset));
        for (auto& b : junk)
            b = uint8_t(rng.next_u64() & 1u);
        stream.insert(stream.begin(), junk.begin(), junk.end());
    }
    return stream;
}

int tcp_listen(uint16_t port)
{
    int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0)
        throw IoError(std::string("socket: ") + std::strerror(errno));
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(port);
    if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
        ::close(fd);
        throw IoError(std::string("bind: ") + std::strerror(errno));
    }
    if (::listen(fd, 1) < 0) {
        ::close(fd);
        throw IoError(std::string("listen: ") + std::strerror(errno));
    }
    return fd;
}

uint16_t tcp_bound_port(int listen_fd)
{
    sockaddr_in addr{};
    socklen_t len = sizeof addr;
    if (::getsockname(listen_fd, reinterpret_cast<sockaddr*>(&addr), &len) < 0)
        throw IoError(std::string("getsockname: ") + std::strerror(errno));
    return ntohs(addr.sin_port);
}

int tcp_accept(int listen_fd)
{
    int fd = ::accept(listen_fd, nullptr, nullptr);
    if (fd < 0)
        throw IoError(std::string("accept: ") + std::strerror(errno));
    return fd;
}

int tcp_connect(const std::string& host, uint16_t port)
{
    int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0)
        throw IoError(std::string("socket: ") + std::strerror(errno));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
        ::close(fd);
        throw IoError("connect: bad IPv4 address " + host);
    }
    if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
        ::close(fd);
        throw IoError(std::string("connect: ") + std::strerror(errno));
    }
    return fd;
}

void tcp_send_all(int fd, const uint8_t* data, size_t len)
{
    size_t sent = 0;
    while (sent < len) {
        ssize_t n = ::send(fd, data + sent, len - sent, 0);
        if (n < 0) {
            if (errno == EINTR)
                continue;
            throw IoError(std::string("send: ") + std::strerror(errno));
        }
        sent += size_t(n);
    }
}

void tcp_close(int fd)
{
    if (fd >= 0)
        ::close(fd);
}

void send_file_tcp(const std::string& host, uint16_t port, const std::string& in_path,
                   const SendOptions& opts)
{
    std::vector<BitVec> payloads = payloads_from_bytes(read_binary_file(in_path), opts.mode);
    BitVec stream = build_wire_stream(payloads, opts);
    std::vector<uint8_t> bytes = bits_to_bytes(stream);
    int fd = tcp_connect(host, port);
    try {
        tcp_send_all(fd, bytes.data(), bytes.size());
    } catch (...) {
        tcp_close(fd);
        throw;
    }
    tcp_close(fd);
}

RecvOutcome recv_to_file_tcp(int listen_fd, const std::string& out_path, SimMode mode,
                             const CodecConfig& cfg)
{
    RecvOutcome out;
    int fd = tcp_accept(listen_fd);
    StreamReceiver rx(mode, cfg);
    uint8_t buf[4096];
    for (;;) {
        ssize_t n = ::recv(fd, buf, sizeof buf, 0);
        if (n == 0)
            break;
        if (n < 0) {
            if (errno == EINTR)
                continue;
            out.clean_eof = false;  // partial stream still yields partial metrics
            break;
        }
        rx.feed(buf, size_t(n));
        out.bytes_received += uint64_t(n);
    }
    tcp_close(fd);
    out.payloads = rx.payloads();
    out.metrics = rx.metrics();
    if (!out_path.empty())
        write_binary_file(out_path, payload_data_to_bytes(out.payloads, mode));
    return out;
}

}  // namespace daqlink
