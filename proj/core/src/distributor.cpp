#include "nwalign/distributor.hpp"

#include <condition_variable>
#include <deque>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>
#include <unordered_set>
#include <variant>

#include "nwalign/socket.hpp"

namespace nwalign {

Partition partition_pairs(std::uint64_t total_pairs, std::size_t ranks) {
  if (ranks == 0) throw ConfigError("partition_pairs: ranks must be at least 1");
  Partition out{total_pairs, ranks, {}};
  out.chunks.reserve(ranks);
  const std::uint64_t base = total_pairs / ranks;
  const std::uint64_t extra = total_pairs % ranks;
  std::uint64_t start = 0;
  for (std::size_t r = 0; r < ranks; ++r) {
    const std::uint64_t len = base + (r < extra ? 1 : 0);
    out.chunks.push_back({start, len});
    start += len;
  }
  return out;
}

ResultMessage process_work(const WorkMessage& work, const SessionConfig& cfg) {
  const std::size_t n = work.sequences.size();
  const std::uint64_t pairs = pair_count(n);
  if (work.chunk.start > pairs || work.chunk.length > pairs - work.chunk.start) {
    throw InputError("chunk [" + std::to_string(work.chunk.start) + ", +" + std::to_string(work.chunk.length) +
                     ") exceeds the " + std::to_string(pairs) + " pairs of " + std::to_string(n) + " sequences");
  }
  ResultMessage out{work.rank, {}};
  if (work.chunk.length == 0) return out;
  const std::vector<PairIndex> all = pair_indices(n);
  out.entries.reserve(work.chunk.length);
  for (std::uint64_t k = work.chunk.start; k < work.chunk.end(); ++k) {
    const auto [p, q] = all[k];
    const PairwiseResult r = align_pair({work.sequences[p], work.sequences[q], cfg.scheme}, cfg.engine);
    out.entries.push_back({k, r.alignment.score});
  }
  return out;
}

void check_result(const WorkMessage& work, const ResultMessage& result) {
  if (result.rank != work.rank) {
    throw RankError(work.rank, "result carries rank id " + std::to_string(result.rank));
  }
  if (result.entries.size() != work.chunk.length) {
    throw RankError(work.rank, "expected " + std::to_string(work.chunk.length) + " results, got " +
                                   std::to_string(result.entries.size()));
  }
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(result.entries.size());
  for (const auto& e : result.entries) {
    if (e.pair_index < work.chunk.start || e.pair_index >= work.chunk.end()) {
      throw RankError(work.rank, "pair index " + std::to_string(e.pair_index) + " outside assigned chunk");
    }
    if (!seen.insert(e.pair_index).second) {
      throw RankError(work.rank, "pair index " + std::to_string(e.pair_index) + " reported twice");
    }
  }
}

namespace {

template <class T>
class BlockingQueue {
 public:
  void push(T value) {
    {
      std::lock_guard lock(mu_);
      items_.push_back(std::move(value));
    }
    cv_.notify_one();
  }

  T pop() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [this] { return !items_.empty(); });
    return take();
  }

  std::optional<T> pop_for(std::chrono::milliseconds timeout) {
    std::unique_lock lock(mu_);
    if (!cv_.wait_for(lock, timeout, [this] { return !items_.empty(); })) return std::nullopt;
    return take();
  }

 private:
  T take() {
    T v = std::move(items_.front());
    items_.pop_front();
    return v;
  }

  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<T> items_;
};

struct RankFailure {
  std::size_t rank;
  std::string what;
};

using Outcome = std::variant<ResultMessage, RankFailure>;

struct Mailboxes {
  explicit Mailboxes(std::size_t ranks) : inbox(ranks) {}
  std::vector<BlockingQueue<WorkMessage>> inbox;
  BlockingQueue<std::pair<std::size_t, Outcome>> outbox;
};

std::vector<WorkMessage> make_work(const MsaJob& job, const Partition& part) {
  std::vector<WorkMessage> out;
  out.reserve(part.ranks);
  for (std::size_t r = 0; r < part.ranks; ++r) {
    out.push_back({static_cast<std::uint32_t>(r), part.chunks[r], job.sequences});
  }
  return out;
}

Outcome guarded(std::size_t rank, const std::function<ResultMessage()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return RankFailure{rank, e.what()};
  }
}

}  // namespace

PairScoreMatrix scatter_gather(const MsaJob& job, const DistributorOptions& dist, const EngineOptions& engine) {
  job.validate();
  if (dist.ranks == 0) throw ConfigError("distributor: ranks must be at least 1");
  if (dist.ranks > std::numeric_limits<std::uint32_t>::max()) throw ConfigError("distributor: too many ranks");
  if (engine.engine == Engine::Wavefront) engine.wavefront.validate();

  const std::size_t n = job.sequences.size();
  const Partition part = partition_pairs(pair_count(n), dist.ranks);
  const std::vector<WorkMessage> work = make_work(job, part);
  const SessionConfig session{job.scheme, engine};

  // Ranks share the mailboxes by pointer so a rank that outlives a timed-out
  // coordinator never touches freed state.
  auto boxes = std::make_shared<Mailboxes>(dist.ranks);
  std::vector<std::thread> threads;
  threads.reserve(dist.ranks);
  std::vector<std::unique_ptr<WorkerServer>> local_servers;
  std::vector<std::thread> server_threads;

  if (dist.transport == Transport::InProcess) {
    for (std::size_t r = 0; r < dist.ranks; ++r) {
      threads.emplace_back([boxes, r, session, body = dist.rank_body] {
        const WorkMessage msg = boxes->inbox[r].pop();
        boxes->outbox.push({r, guarded(r, [&] { return body ? body(msg) : process_work(msg, session); })});
      });
    }
    for (std::size_t r = 0; r < dist.ranks; ++r) boxes->inbox[r].push(work[r]);
  } else {
    std::vector<Endpoint> endpoints = dist.endpoints;
    if (endpoints.empty()) {
      for (std::size_t r = 0; r < dist.ranks; ++r) {
        local_servers.push_back(std::make_unique<WorkerServer>(Endpoint{"127.0.0.1", 0}));
        endpoints.push_back(local_servers.back()->endpoint());
      }
      for (auto& server : local_servers) server_threads.emplace_back([s = server.get()] { s->serve(); });
    }
    for (std::size_t r = 0; r < dist.ranks; ++r) {
      threads.emplace_back([boxes, r, session, msg = work[r], ep = endpoints[r % endpoints.size()],
                            timeout = dist.chunk_timeout] {
        boxes->outbox.push({r, guarded(r, [&] { return run_remote_chunk(ep, session, msg, timeout); })});
      });
    }
  }

  auto release = [&](bool join) {
    for (auto& t : threads) {
      if (join) {
        t.join();
      } else {
        t.detach();
      }
    }
    for (auto& s : local_servers) s->stop();
    for (auto& t : server_threads) t.join();
  };

  PairScoreMatrix out(n);
  const std::vector<PairIndex> pairs = pair_indices(n);
  std::vector<bool> answered(dist.ranks, false);
  std::uint64_t gathered = 0;
  try {
    for (std::size_t received = 0; received < dist.ranks; ++received) {
      auto next = boxes->outbox.pop_for(dist.chunk_timeout);
      if (!next) {
        std::size_t silent = 0;
        while (answered[silent]) ++silent;
        throw RankError(silent, "no result within " + std::to_string(dist.chunk_timeout.count()) + " ms");
      }
      auto& [rank, outcome] = *next;
      answered[rank] = true;
      if (const auto* failure = std::get_if<RankFailure>(&outcome)) throw RankError(failure->rank, failure->what);
      const auto& result = std::get<ResultMessage>(outcome);
      check_result(work[rank], result);
      for (const auto& e : result.entries) out.set(pairs[e.pair_index].p, pairs[e.pair_index].q, e.score);
      gathered += result.entries.size();
    }
  } catch (...) {
    release(false);
    throw;
  }
  release(true);
  if (gathered != part.total_pairs) {
    throw InvariantError("gathered " + std::to_string(gathered) + " scores for " + std::to_string(part.total_pairs) +
                         " pairs");
  }
  return out;
}

}  // namespace nwalign
