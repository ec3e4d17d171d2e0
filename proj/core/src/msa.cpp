#include "nwalign/msa.hpp"

#include <exception>
#include <thread>

namespace nwalign {

std::vector<Alignment> align_all_to_center_distributed(const MsaJob& job, std::size_t center,
                                                       const EngineOptions& opts, std::size_t ranks) {
  job.validate();
  if (center >= job.sequences.size()) throw InputError("center index out of range");
  if (ranks <= 1) return align_all_to_center(job, center, opts);

  std::vector<std::size_t> others;
  for (std::size_t k = 0; k < job.sequences.size(); ++k) {
    if (k != center) others.push_back(k);
  }
  const Partition part = partition_pairs(others.size(), ranks);
  std::vector<Alignment> out(others.size());
  std::vector<std::exception_ptr> errors(ranks);
  {
    std::vector<std::jthread> pool;
    for (std::size_t r = 0; r < ranks; ++r) {
      if (part.chunks[r].length == 0) continue;
      pool.emplace_back([&, r] {
        try {
          for (std::uint64_t t = part.chunks[r].start; t < part.chunks[r].end(); ++t) {
            out[t] = align_pair({job.sequences[center], job.sequences[others[t]], job.scheme}, opts).alignment;
          }
        } catch (...) {
          errors[r] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

MsaResult msa(const MsaJob& job, const MsaOptions& opts) {
  job.validate();
  const PairScoreMatrix scores = scatter_gather(job, opts.distributor, opts.engine);
  const std::size_t center = select_center(scores);
  const std::vector<Alignment> alignments =
      align_all_to_center_distributed(job, center, opts.engine, opts.distributor.ranks);
  return merge_alignments(alignments, center, job);
}

}  // namespace nwalign
