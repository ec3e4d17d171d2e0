#include "nwalign/center_star.hpp"

#include <algorithm>
#include <numeric>

namespace nwalign {

PairwiseResult align_pair(const AlignmentProblem& problem, const EngineOptions& opts) {
  switch (opts.engine) {
    case Engine::Serial:
      return align_serial(problem);
    case Engine::Wavefront:
      return align_wavefront(problem, opts.wavefront);
  }
  throw ConfigError("unknown engine");
}

void MsaJob::validate() const {
  if (sequences.size() < 2) throw InputError("need at least 2 sequences");
  scheme.validate();
}

std::size_t pair_count(std::size_t n) noexcept { return n < 2 ? 0 : n * (n - 1) / 2; }

std::vector<PairIndex> pair_indices(std::size_t n) {
  if (n < 2) throw InputError("pair_indices: need at least 2 sequences, got " + std::to_string(n));
  std::vector<PairIndex> out;
  out.reserve(pair_count(n));
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) out.push_back({p, q});
  }
  return out;
}

Score PairScoreMatrix::row_sum(std::size_t p) const noexcept {
  const auto row = scores_.begin() + static_cast<std::ptrdiff_t>(p * n_);
  return std::accumulate(row, row + static_cast<std::ptrdiff_t>(n_), Score{0});
}

PairScoreMatrix compute_pair_scores(const MsaJob& job, const EngineOptions& opts) {
  job.validate();
  PairScoreMatrix out(job.sequences.size());
  for (const auto [p, q] : pair_indices(job.sequences.size())) {
    out.set(p, q, align_pair({job.sequences[p], job.sequences[q], job.scheme}, opts).alignment.score);
  }
  return out;
}

std::size_t select_center(const PairScoreMatrix& scores) {
  if (scores.size() == 0) throw InputError("select_center: empty score matrix");
  std::size_t best = 0;
  Score best_sum = scores.row_sum(0);
  for (std::size_t p = 1; p < scores.size(); ++p) {
    if (const Score s = scores.row_sum(p); s > best_sum) {
      best = p;
      best_sum = s;
    }
  }
  return best;
}

std::vector<Alignment> align_all_to_center(const MsaJob& job, std::size_t center, const EngineOptions& opts) {
  job.validate();
  if (center >= job.sequences.size()) throw InputError("center index out of range");
  std::vector<Alignment> out;
  out.reserve(job.sequences.size() - 1);
  for (std::size_t k = 0; k < job.sequences.size(); ++k) {
    if (k == center) continue;
    out.push_back(align_pair({job.sequences[center], job.sequences[k], job.scheme}, opts).alignment);
  }
  return out;
}

namespace {

// gaps[pos] = number of center-gap columns immediately before center residue
// pos; gaps[L] counts the trailing ones.
std::vector<std::size_t> center_gap_profile(const Alignment& aln, std::size_t center_length) {
  std::vector<std::size_t> gaps(center_length + 1, 0);
  std::size_t pos = 0;
  for (const char c : aln.gapped_a) {
    if (c == kGap) {
      ++gaps[pos];
    } else {
      ++pos;
    }
  }
  return gaps;
}

}  // namespace

MsaResult merge_alignments(std::span<const Alignment> alignments, std::size_t center, const MsaJob& job) {
  const std::size_t n = job.sequences.size();
  if (center >= n) throw InputError("center index out of range");
  if (alignments.size() + 1 != n) {
    throw InputError("merge: expected " + std::to_string(n - 1) + " alignments, got " +
                     std::to_string(alignments.size()));
  }
  const Sequence& c = job.sequences[center];
  const std::size_t len = c.length();

  std::vector<std::vector<std::size_t>> profiles;
  profiles.reserve(alignments.size());
  std::vector<std::size_t> merged(len + 1, 0);
  for (std::size_t t = 0; t < alignments.size(); ++t) {
    const Alignment& aln = alignments[t];
    if (aln.gapped_a.size() != aln.gapped_b.size() || degap(aln.gapped_a) != c.residues()) {
      throw InputError("merge: alignment " + std::to_string(t) + " does not carry the center as its first row");
    }
    profiles.push_back(center_gap_profile(aln, len));
    for (std::size_t pos = 0; pos <= len; ++pos) merged[pos] = std::max(merged[pos], profiles.back()[pos]);
  }
  const std::size_t width = len + std::accumulate(merged.begin(), merged.end(), std::size_t{0});

  MsaResult out;
  out.center_index = center;
  out.ids.reserve(n);
  out.rows.resize(n);
  for (const auto& s : job.sequences) out.ids.push_back(s.id());

  std::string& center_row = out.rows[center];
  center_row.reserve(width);
  for (std::size_t pos = 0; pos <= len; ++pos) {
    center_row.append(merged[pos], kGap);
    if (pos < len) center_row.push_back(c[pos]);
  }

  for (std::size_t t = 0; t < alignments.size(); ++t) {
    const std::string& other = alignments[t].gapped_b;
    const std::vector<std::size_t>& gaps = profiles[t];
    std::string& row = out.rows[t < center ? t : t + 1];
    row.reserve(width);
    std::size_t col = 0;
    for (std::size_t pos = 0; pos <= len; ++pos) {
      row.append(other, col, gaps[pos]);
      col += gaps[pos];
      row.append(merged[pos] - gaps[pos], kGap);
      if (pos < len) row.push_back(other[col++]);
    }
  }
  return out;
}

}  // namespace nwalign
