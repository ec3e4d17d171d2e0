#include "nwalign/wire.hpp"

#include <algorithm>
#include <limits>

namespace nwalign::wire {

namespace {

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) { put(v, 2); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void i64(std::int64_t v) { put(static_cast<std::uint64_t>(v), 8); }
  void bytes(std::string_view s) { out_.insert(out_.end(), s.begin(), s.end()); }

  Bytes take() && { return std::move(out_); }

 private:
  void put(std::uint64_t v, int width) {
    for (int shift = (width - 1) * 8; shift >= 0; shift -= 8) out_.push_back(static_cast<std::uint8_t>(v >> shift));
  }

  Bytes out_;
};

class Reader {
 public:
  Reader(std::span<const std::uint8_t> in, const char* what) : in_(in), what_(what) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  std::int64_t i64() { return static_cast<std::int64_t>(get(8)); }

  std::string text(std::uint64_t len) {
    need(len);
    std::string s(in_.begin() + static_cast<std::ptrdiff_t>(pos_),
                  in_.begin() + static_cast<std::ptrdiff_t>(pos_ + len));
    pos_ += len;
    return s;
  }

  std::size_t remaining() const noexcept { return in_.size() - pos_; }

  void finish() const {
    if (remaining() != 0) {
      throw ProtocolError(std::string(what_) + ": " + std::to_string(remaining()) + " trailing bytes");
    }
  }

 private:
  void need(std::uint64_t len) const {
    if (len > remaining()) throw ProtocolError(std::string(what_) + ": truncated payload");
  }

  std::uint64_t get(std::size_t width) {
    need(width);
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < width; ++k) v = (v << 8) | in_[pos_ + k];
    pos_ += width;
    return v;
  }

  std::span<const std::uint8_t> in_;
  const char* what_;
  std::size_t pos_ = 0;
};

bool known_type(std::uint8_t t) noexcept {
  switch (static_cast<FrameType>(t)) {
    case FrameType::Hello:
    case FrameType::Work:
    case FrameType::Result:
    case FrameType::Shutdown:
    case FrameType::Error:
      return true;
  }
  return false;
}

}  // namespace

Bytes encode_frame(FrameType type, std::span<const std::uint8_t> payload) {
  if (payload.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw ProtocolError("frame payload of " + std::to_string(payload.size()) + " bytes exceeds the u32 length field");
  }
  Writer w;
  for (const auto b : kMagic) w.u8(b);
  w.u8(static_cast<std::uint8_t>(type));
  w.u32(static_cast<std::uint32_t>(payload.size()));
  Bytes out = std::move(w).take();
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

FrameHeader decode_header(std::span<const std::uint8_t> header) {
  if (header.size() != kHeaderSize) throw ProtocolError("frame header must be 9 bytes");
  if (!std::equal(kMagic.begin(), kMagic.end(), header.begin())) throw ProtocolError("bad frame magic");
  if (!known_type(header[4])) throw ProtocolError("unknown frame type " + std::to_string(header[4]));
  Reader r(header.subspan(5), "frame header");
  return {static_cast<FrameType>(header[4]), r.u32()};
}

Frame decode_frame(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) throw ProtocolError("frame shorter than its header");
  const FrameHeader h = decode_header(bytes.first(kHeaderSize));
  const auto body = bytes.subspan(kHeaderSize);
  if (body.size() != h.payload_length) {
    throw ProtocolError("frame payload length " + std::to_string(h.payload_length) + " does not match " +
                        std::to_string(body.size()) + " bytes present");
  }
  return {h.type, Bytes(body.begin(), body.end())};
}

Bytes encode_work(const WorkMessage& work) {
  if (work.sequences.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw ProtocolError("WORK: too many sequences");
  }
  Writer w;
  w.u32(work.rank);
  w.u64(work.chunk.start);
  w.u64(work.chunk.length);
  w.u32(static_cast<std::uint32_t>(work.sequences.size()));
  for (const auto& s : work.sequences) {
    if (s.id().size() > std::numeric_limits<std::uint16_t>::max()) {
      throw ProtocolError("WORK: sequence id longer than 65535 bytes");
    }
    w.u16(static_cast<std::uint16_t>(s.id().size()));
    w.bytes(s.id());
    w.u64(s.length());
    w.bytes(s.residues());
  }
  return std::move(w).take();
}

WorkMessage decode_work(std::span<const std::uint8_t> payload) {
  Reader r(payload, "WORK");
  WorkMessage work;
  work.rank = r.u32();
  work.chunk.start = r.u64();
  work.chunk.length = r.u64();
  const std::uint32_t count = r.u32();
  // Each sequence takes at least 10 bytes; refuse counts the payload cannot hold.
  if (count > r.remaining() / 10) throw ProtocolError("WORK: sequence count exceeds payload");
  work.sequences.reserve(count);
  for (std::uint32_t k = 0; k < count; ++k) {
    std::string id = r.text(r.u16());
    std::string residues = r.text(r.u64());
    try {
      work.sequences.emplace_back(std::move(id), std::move(residues));
    } catch (const InputError& e) {
      throw ProtocolError(std::string("WORK: ") + e.what());
    }
  }
  r.finish();
  return work;
}

Bytes encode_result(const ResultMessage& result) {
  Writer w;
  w.u32(result.rank);
  w.u64(result.entries.size());
  for (const auto& e : result.entries) {
    w.u64(e.pair_index);
    w.i64(e.score);
  }
  return std::move(w).take();
}

ResultMessage decode_result(std::span<const std::uint8_t> payload) {
  Reader r(payload, "RESULT");
  ResultMessage result;
  result.rank = r.u32();
  const std::uint64_t count = r.u64();
  if (count > r.remaining() / 16) throw ProtocolError("RESULT: entry count exceeds payload");
  result.entries.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    const std::uint64_t index = r.u64();
    result.entries.push_back({index, r.i64()});
  }
  r.finish();
  return result;
}

Bytes encode_hello(const SessionConfig& cfg) {
  const auto& wf = cfg.engine.wavefront;
  if (wf.workers > std::numeric_limits<std::uint32_t>::max() || wf.grain > std::numeric_limits<std::uint32_t>::max()) {
    throw ProtocolError("HELLO: wavefront settings exceed u32");
  }
  Writer w;
  w.i64(cfg.scheme.match_score);
  w.i64(cfg.scheme.mismatch_score);
  w.i64(cfg.scheme.gap_penalty);
  w.u8(cfg.engine.engine == Engine::Wavefront ? 1 : 0);
  w.u32(static_cast<std::uint32_t>(wf.workers));
  w.u32(static_cast<std::uint32_t>(wf.grain));
  return std::move(w).take();
}

SessionConfig decode_hello(std::span<const std::uint8_t> payload) {
  Reader r(payload, "HELLO");
  SessionConfig cfg;
  cfg.scheme.match_score = r.i64();
  cfg.scheme.mismatch_score = r.i64();
  cfg.scheme.gap_penalty = r.i64();
  const std::uint8_t engine = r.u8();
  if (engine > 1) throw ProtocolError("HELLO: unknown engine " + std::to_string(engine));
  cfg.engine.engine = engine == 1 ? Engine::Wavefront : Engine::Serial;
  cfg.engine.wavefront.workers = r.u32();
  cfg.engine.wavefront.grain = r.u32();
  r.finish();
  return cfg;
}

Bytes encode_error(std::string_view text) { return Bytes(text.begin(), text.end()); }

std::string decode_error(std::span<const std::uint8_t> payload) { return std::string(payload.begin(), payload.end()); }

}  // namespace nwalign::wire
