#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "daqlink/io.hpp"
#include "daqlink/pipeline.hpp"

namespace daqlink {

// Link emulation over a reliable TCP byte stream. The sender writes the
// serialized frame stream packed MSB-first into bytes (stream bit 0 = MSB of
// byte 0); there is no extra wire framing, so the receiver's frame aligner is
// the only synchronization mechanism. An optional bit offset prepends
// pseudo-random bits to exercise alignment, and an optional channel model
// impairs the stream before transmission.

struct SendOptions {
    SimMode mode = SimMode::Standard;
    CodecConfig codec{};
    int bit_offset = 0;                          // junk bits prepended to the stream
    uint64_t junk_seed = 1;
    std::optional<ChannelConfig> impairment;     // applied before packing
};

// Incremental receive side: bytes in, parsed payloads and counters out.
class StreamReceiver {
public:
    explicit StreamReceiver(SimMode mode, const CodecConfig& cfg = {});

    void feed(const uint8_t* data, size_t len);
    const std::vector<BitVec>& payloads() const { return payloads_; }
    LinkMetrics metrics() const;
    const FrameAligner& aligner() const { return aligner_; }

private:
    SimMode mode_;
    CodecConfig cfg_;
    FrameAligner aligner_;
    std::vector<BitVec> payloads_;
    LinkMetrics metrics_;
};

BitVec build_wire_stream(const std::vector<BitVec>& payloads, const SendOptions& opts);

// Low-level helpers (IPv4). listen with port 0 picks a free port.
int tcp_listen(uint16_t port);
uint16_t tcp_bound_port(int listen_fd);
int tcp_accept(int listen_fd);
int tcp_connect(const std::string& host, uint16_t port);
void tcp_send_all(int fd, const uint8_t* data, size_t len);
void tcp_close(int fd);

// CLI-facing operations.
struct RecvOutcome {
    std::vector<BitVec> payloads;
    LinkMetrics metrics;
    uint64_t bytes_received = 0;
    bool clean_eof = true;
};

void send_file_tcp(const std::string& host, uint16_t port, const std::string& in_path,
                   const SendOptions& opts);
RecvOutcome recv_to_file_tcp(int listen_fd, const std::string& out_path, SimMode mode,
                             const CodecConfig& cfg = {});

}  // namespace daqlink
