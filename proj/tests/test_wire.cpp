#include <doctest.h>

#include <limits>
#include <random>

#include "nwalign/wire.hpp"
#include "test_util.hpp"

using namespace nwalign;
using namespace nwalign::wire;

namespace {

Bytes hex(std::initializer_list<int> values) {
  Bytes out;
  for (const int v : values) out.push_back(static_cast<std::uint8_t>(v));
  return out;
}

}  // namespace

TEST_SUITE("wire") {

TEST_CASE("frame layout is bit-exact") {
  CHECK(encode_frame(FrameType::Shutdown, {}) == hex({'N', 'W', 'D', '1', 0x04, 0, 0, 0, 0}));
  const Bytes payload = hex({0xAA, 0xBB});
  CHECK(encode_frame(FrameType::Error, payload) == hex({'N', 'W', 'D', '1', 0x7F, 0, 0, 0, 2, 0xAA, 0xBB}));
  const auto f = decode_frame(encode_frame(FrameType::Result, payload));
  CHECK(f.type == FrameType::Result);
  CHECK(f.payload == payload);
}

TEST_CASE("RESULT payload is bit-exact") {
  const ResultMessage r{1, {{2, -1}}};
  CHECK(encode_result(r) == hex({0, 0, 0, 1,                                      // rank
                                 0, 0, 0, 0, 0, 0, 0, 1,                          // count
                                 0, 0, 0, 0, 0, 0, 0, 2,                          // pair index
                                 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF}));  // score
  CHECK(decode_result(encode_result(r)) == r);
}

TEST_CASE("WORK payload is bit-exact") {
  const WorkMessage w{3, {0x0102, 5}, {Sequence("s1", "AC")}};
  CHECK(encode_work(w) == hex({0, 0, 0, 3,                    // rank
                               0, 0, 0, 0, 0, 0, 0x01, 0x02,  // start
                               0, 0, 0, 0, 0, 0, 0, 5,        // length
                               0, 0, 0, 1,                    // sequence count
                               0, 2, 's', '1',                // id
                               0, 0, 0, 0, 0, 0, 0, 2, 'A', 'C'}));
  CHECK(decode_work(encode_work(w)) == w);
}

TEST_CASE("HELLO carries the session config") {
  SessionConfig cfg{{3, -2, -5}, {Engine::Wavefront, {6, 128}}};
  const Bytes bytes = encode_hello(cfg);
  CHECK(bytes.size() == kHelloConfigSize);
  CHECK(decode_hello(bytes) == cfg);
  Bytes bad = bytes;
  bad[24] = 7;
  CHECK_THROWS_AS(decode_hello(bad), ProtocolError);
}

TEST_CASE("decode rejects malformed input") {
  CHECK_THROWS_AS(decode_header(hex({'N', 'W', 'D', '2', 1, 0, 0, 0, 0})), ProtocolError);
  CHECK_THROWS_AS(decode_header(hex({'N', 'W', 'D', '1', 0x05, 0, 0, 0, 0})), ProtocolError);
  CHECK_THROWS_AS(decode_header(hex({'N', 'W', 'D', '1', 0x01})), ProtocolError);
  CHECK_THROWS_AS(decode_frame(hex({'N', 'W', 'D', '1', 0x01, 0, 0, 0, 3, 1})), ProtocolError);

  Bytes work = encode_work({0, {0, 1}, {Sequence("a", "ACGT")}});
  CHECK_THROWS_AS(decode_work({work.data(), work.size() - 1}), ProtocolError);
  Bytes trailing = work;
  trailing.push_back(0);
  CHECK_THROWS_AS(decode_work(trailing), ProtocolError);
  Bytes lowercase = work;
  lowercase.back() = 't';
  CHECK_THROWS_AS(decode_work(lowercase), ProtocolError);
  // A count the payload cannot possibly hold must not trigger a huge allocation.
  Bytes huge = hex({0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0xFF, 0xFF, 0xFF, 0xFF});
  CHECK_THROWS_AS(decode_work(huge), ProtocolError);
  Bytes huge_result = hex({0, 0, 0, 0, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF});
  CHECK_THROWS_AS(decode_result(huge_result), ProtocolError);
}

TEST_CASE("decoders are total on random bytes") {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 5000; ++trial) {
    Bytes junk(rng() % 64);
    for (auto& b : junk) b = static_cast<std::uint8_t>(rng());
    try {
      (void)decode_work(junk);
    } catch (const ProtocolError&) {
    }
    try {
      (void)decode_result(junk);
    } catch (const ProtocolError&) {
    }
    try {
      (void)decode_frame(junk);
    } catch (const ProtocolError&) {
    }
  }
}

TEST_CASE("round trip preserves 64-bit boundary values") {
  constexpr auto kU64 = std::numeric_limits<std::uint64_t>::max();
  const ResultMessage r{std::numeric_limits<std::uint32_t>::max(),
                        {{0, std::numeric_limits<Score>::min()}, {kU64, std::numeric_limits<Score>::max()}, {1, 0}}};
  CHECK(decode_result(encode_result(r)) == r);
  const WorkMessage w{0, {kU64, kU64}, {}};
  CHECK(decode_work(encode_work(w)) == w);
  const WorkMessage empty{7, {42, 0}, {Sequence("", "")}};
  CHECK(decode_work(encode_work(empty)) == empty);
}

TEST_CASE("error text round trip") { CHECK(decode_error(encode_error("boom \xE2\x9C\x93")) == "boom \xE2\x9C\x93"); }

}  // TEST_SUITE
