#pragma once

// Center-star multiple sequence alignment: score every pair, pick the
// sequence with the largest row sum as the center, align everything to it,
// then merge the pairwise alignments by union-gapping the center.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nwalign/core.hpp"
#include "nwalign/serial.hpp"
#include "nwalign/wavefront.hpp"

namespace nwalign {

enum class Engine { Serial, Wavefront };

struct EngineOptions {
  Engine engine = Engine::Serial;
  WavefrontConfig wavefront;
};

// Runs the chosen engine on one pair.
PairwiseResult align_pair(const AlignmentProblem& problem, const EngineOptions& opts);

struct MsaJob {
  std::vector<Sequence> sequences;
  ScoringScheme scheme;

  // Throws InputError for fewer than two sequences, ConfigError for a bad scheme.
  void validate() const;
};

struct PairIndex {
  std::size_t p;
  std::size_t q;

  friend bool operator==(const PairIndex&, const PairIndex&) = default;
};

// All (p, q) with p < q < n in lexicographic order. n(n-1)/2 entries.
std::vector<PairIndex> pair_indices(std::size_t n);

std::size_t pair_count(std::size_t n) noexcept;

// Symmetric n x n score table; the diagonal is fixed at zero.
class PairScoreMatrix {
 public:
  PairScoreMatrix() = default;
  explicit PairScoreMatrix(std::size_t n) : n_(n), scores_(n * n, 0) {}

  std::size_t size() const noexcept { return n_; }
  Score at(std::size_t p, std::size_t q) const noexcept { return scores_[p * n_ + q]; }
  void set(std::size_t p, std::size_t q, Score s) noexcept {
    scores_[p * n_ + q] = s;
    scores_[q * n_ + p] = s;
  }
  Score row_sum(std::size_t p) const noexcept;

  friend bool operator==(const PairScoreMatrix&, const PairScoreMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Score> scores_;
};

// Direct in-process loop over pair_indices.
PairScoreMatrix compute_pair_scores(const MsaJob& job, const EngineOptions& opts);

// argmax of row sums, lowest index on ties.
std::size_t select_center(const PairScoreMatrix& scores);

// One alignment per non-center sequence in input order, center as gapped_a.
std::vector<Alignment> align_all_to_center(const MsaJob& job, std::size_t center, const EngineOptions& opts);

struct MsaResult {
  std::size_t center_index = 0;
  std::vector<std::string> ids;
  std::vector<std::string> rows;  // input order, all the same width

  std::size_t width() const noexcept { return rows.empty() ? 0 : rows.front().size(); }

  friend bool operator==(const MsaResult&, const MsaResult&) = default;
};

// Merges center-vs-other alignments (ordered as align_all_to_center returns
// them). Wherever any pairwise alignment opens a gap in the center, every
// row receives that gap column. Throws InputError when an alignment's center
// row does not degap to the center sequence.
MsaResult merge_alignments(std::span<const Alignment> alignments, std::size_t center, const MsaJob& job);

}  // namespace nwalign
