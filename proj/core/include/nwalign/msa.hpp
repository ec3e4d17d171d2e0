#pragma once

#include "nwalign/center_star.hpp"
#include "nwalign/distributor.hpp"

namespace nwalign {

struct MsaOptions {
  EngineOptions engine;
  DistributorOptions distributor;
};

// Pair scores (through the distributor), center selection, alignment of
// every sequence to the center, merge. With more than one rank the
// align-to-center stage is also split across that many in-process workers.
MsaResult msa(const MsaJob& job, const MsaOptions& opts);

// align_all_to_center with the n-1 alignments partitioned over `ranks`
// threads. Output order and content match the single-threaded version.
std::vector<Alignment> align_all_to_center_distributed(const MsaJob& job, std::size_t center,
                                                       const EngineOptions& opts, std::size_t ranks);

}  // namespace nwalign
