#pragma once

// Coordinator/worker distribution of the pairwise score stage. The
// n(n-1)/2 pairs are cut into contiguous chunks, one per rank, shipped out
// as WorkMessages and gathered back as ResultMessages.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nwalign/center_star.hpp"

namespace nwalign {

// Half-open range [start, start + length) over the pair_indices ordering.
struct ChunkRange {
  std::uint64_t start = 0;
  std::uint64_t length = 0;

  std::uint64_t end() const noexcept { return start + length; }

  friend bool operator==(const ChunkRange&, const ChunkRange&) = default;
};

struct Partition {
  std::uint64_t total_pairs = 0;
  std::size_t ranks = 0;
  std::vector<ChunkRange> chunks;  // one per rank
};

// The first total_pairs % ranks ranks get one extra pair. Throws ConfigError
// when ranks == 0.
Partition partition_pairs(std::uint64_t total_pairs, std::size_t ranks);

struct WorkMessage {
  std::uint32_t rank = 0;
  ChunkRange chunk;
  std::vector<Sequence> sequences;  // the whole job, so pair indices resolve

  friend bool operator==(const WorkMessage&, const WorkMessage&) = default;
};

struct ScoreEntry {
  std::uint64_t pair_index = 0;
  Score score = 0;

  friend bool operator==(const ScoreEntry&, const ScoreEntry&) = default;
};

struct ResultMessage {
  std::uint32_t rank = 0;
  std::vector<ScoreEntry> entries;

  friend bool operator==(const ResultMessage&, const ResultMessage&) = default;
};

// Per-session settings a rank needs besides the work itself.
struct SessionConfig {
  ScoringScheme scheme;
  EngineOptions engine;

  friend bool operator==(const SessionConfig& x, const SessionConfig& y) {
    return x.scheme == y.scheme && x.engine.engine == y.engine.engine &&
           x.engine.wavefront.workers == y.engine.wavefront.workers &&
           x.engine.wavefront.grain == y.engine.wavefront.grain;
  }
};

// The body of a rank: score every pair in the chunk. Throws InputError if
// the chunk reaches past the job's pair count.
ResultMessage process_work(const WorkMessage& work, const SessionConfig& cfg);

enum class Transport { InProcess, Socket };

struct Endpoint {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;

  // "host:port"; throws InputError otherwise.
  static Endpoint parse(const std::string& text);
  std::string to_string() const;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

struct DistributorOptions {
  std::size_t ranks = 1;
  Transport transport = Transport::InProcess;
  std::chrono::milliseconds chunk_timeout{60'000};
  // Socket transport: rank r talks to endpoints[r % size]. When empty, one
  // loopback worker per rank is started for the duration of the call.
  std::vector<Endpoint> endpoints;
  // In-process transport only: replaces process_work as the rank body.
  std::function<ResultMessage(const WorkMessage&)> rank_body;
};

// Scatter chunks to ranks, gather scores back into the symmetric matrix.
// Any rank failure, malformed result or timeout surfaces as RankError.
PairScoreMatrix scatter_gather(const MsaJob& job, const DistributorOptions& dist, const EngineOptions& engine);

// Coordinator-side check that `result` answers `work` exactly: right rank,
// every index inside the chunk, each index once. Throws RankError.
void check_result(const WorkMessage& work, const ResultMessage& result);

}  // namespace nwalign
