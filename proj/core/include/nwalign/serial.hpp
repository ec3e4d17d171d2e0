#pragma once

// Reference pairwise aligner: row-major fill followed by backtracking.

#include <cstddef>
#include <limits>
#include <vector>

#include "nwalign/core.hpp"

namespace nwalign {

struct AlignmentProblem {
  Sequence a;
  Sequence b;
  ScoringScheme scheme;
};

struct PairwiseResult {
  ScoreMatrix score;
  TracebackMatrix trace;
  Alignment alignment;
};

PairwiseResult align_serial(const AlignmentProblem& problem);

// Walks direction codes from (m,n) back to the origin. The returned
// alignment's score is left at zero: the traceback grid carries no scores.
// Throws InvariantError on an Unset cell or a grid of the wrong shape.
Alignment traceback_one(const TracebackMatrix& tb, const Sequence& a, const Sequence& b);

inline constexpr std::size_t kDefaultPathCap = 256;
inline constexpr std::size_t kUncapped = std::numeric_limits<std::size_t>::max();

struct CoOptimalAlignments {
  std::vector<Alignment> alignments;
  // More optimal paths existed than `cap` allowed.
  bool truncated = false;
};

// Enumerates every optimal path depth-first, re-deriving co-optimal
// predecessors from the score matrix. Branches are tried diagonal, vertical,
// horizontal, so the first result is always the traceback_one alignment.
CoOptimalAlignments traceback_all(const ScoreMatrix& score, const Sequence& a, const Sequence& b,
                                  const ScoringScheme& scheme, std::size_t cap = kDefaultPathCap);

namespace detail {
// Fills both matrices for `problem`; `m` must come from init_matrices.
void fill_row_major(const AlignmentProblem& problem, Matrices& m);
}  // namespace detail

}  // namespace nwalign
