#pragma once

// Binary framing for the coordinator/worker socket protocol. Big-endian
// throughout.
//
//   frame   = magic "NWD1" | type u8 | payload length u32 | payload
//   WORK    = rank u32 | chunk start u64 | chunk length u64 | count u32 |
//             count x (id length u16 | id | residue length u64 | residues)
//   RESULT  = rank u32 | entry count u64 | count x (pair index u64 | score i64)
//   ERROR   = UTF-8 text
//   HELLO   = empty (worker -> coordinator acknowledgement), or the session
//             config (coordinator -> worker): match i64 | mismatch i64 |
//             gap i64 | engine u8 | wavefront workers u32 | grain u32
//   SHUTDOWN = empty

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nwalign/distributor.hpp"

namespace nwalign::wire {

enum class FrameType : std::uint8_t {
  Hello = 0x01,
  Work = 0x02,
  Result = 0x03,
  Shutdown = 0x04,
  Error = 0x7F,
};

inline constexpr std::array<std::uint8_t, 4> kMagic{'N', 'W', 'D', '1'};
inline constexpr std::size_t kHeaderSize = 9;
inline constexpr std::size_t kHelloConfigSize = 3 * 8 + 1 + 4 + 4;

using Bytes = std::vector<std::uint8_t>;

struct FrameHeader {
  FrameType type;
  std::uint32_t payload_length;
};

struct Frame {
  FrameType type;
  Bytes payload;

  friend bool operator==(const Frame&, const Frame&) = default;
};

Bytes encode_frame(FrameType type, std::span<const std::uint8_t> payload);

// Throws ProtocolError on a wrong magic or an unknown type byte.
FrameHeader decode_header(std::span<const std::uint8_t> header);

// Decodes exactly one frame occupying all of `bytes`.
Frame decode_frame(std::span<const std::uint8_t> bytes);

Bytes encode_work(const WorkMessage& work);
WorkMessage decode_work(std::span<const std::uint8_t> payload);

Bytes encode_result(const ResultMessage& result);
ResultMessage decode_result(std::span<const std::uint8_t> payload);

Bytes encode_hello(const SessionConfig& cfg);
SessionConfig decode_hello(std::span<const std::uint8_t> payload);

Bytes encode_error(std::string_view text);
std::string decode_error(std::span<const std::uint8_t> payload);

}  // namespace nwalign::wire
