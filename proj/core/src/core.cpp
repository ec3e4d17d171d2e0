#include "nwalign/core.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace nwalign {

void ScoringScheme::validate() const {
  if (gap_penalty >= 0) {
    throw ConfigError("gap penalty must be negative, got " + std::to_string(gap_penalty));
  }
  if (match_score <= mismatch_score) {
    throw ConfigError("match score must exceed mismatch score");
  }
}

bool is_residue(char c) noexcept { return c >= 'A' && c <= 'Z'; }

Sequence::Sequence(std::string id, std::string residues) : id_(std::move(id)), residues_(std::move(residues)) {
  const auto bad = std::find_if_not(residues_.begin(), residues_.end(), is_residue);
  if (bad != residues_.end()) {
    throw InputError("sequence '" + id_ + "': invalid residue at offset " +
                     std::to_string(bad - residues_.begin()));
  }
}

std::size_t checked_grid_cells(std::size_t rows, std::size_t cols, std::size_t cell_bytes) {
  constexpr auto kMaxBytes = static_cast<std::size_t>(std::numeric_limits<std::ptrdiff_t>::max());
  std::size_t cells = 0;
  std::size_t bytes = 0;
  if (__builtin_mul_overflow(rows, cols, &cells) || __builtin_mul_overflow(cells, cell_bytes, &bytes) ||
      bytes > kMaxBytes) {
    throw InputError("alignment grid of " + std::to_string(rows) + " x " + std::to_string(cols) +
                     " cells is not addressable");
  }
  return cells;
}

std::size_t checked_cell_count(std::size_t m, std::size_t n, std::size_t cell_bytes) {
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  if (m == kMax || n == kMax) {
    throw InputError("sequence length " + std::to_string(std::max(m, n)) + " is not addressable");
  }
  return checked_grid_cells(m + 1, n + 1, cell_bytes);
}

Matrices init_matrices(std::size_t m, std::size_t n, const ScoringScheme& scheme) {
  checked_cell_count(m, n, sizeof(Score));
  Matrices out{ScoreMatrix(m + 1, n + 1), TracebackMatrix(m + 1, n + 1, Direction::Unset)};
  for (std::size_t i = 1; i <= m; ++i) {
    out.score(i, 0) = static_cast<Score>(i) * scheme.gap_penalty;
    out.trace(i, 0) = Direction::Vertical;
  }
  for (std::size_t j = 1; j <= n; ++j) {
    out.score(0, j) = static_cast<Score>(j) * scheme.gap_penalty;
    out.trace(0, j) = Direction::Horizontal;
  }
  return out;
}

Score score_alignment(const Alignment& aln, const ScoringScheme& scheme) {
  if (aln.gapped_a.size() != aln.gapped_b.size()) {
    throw InputError("malformed alignment: rows have lengths " + std::to_string(aln.gapped_a.size()) + " and " +
                     std::to_string(aln.gapped_b.size()));
  }
  Score total = 0;
  for (std::size_t c = 0; c < aln.gapped_a.size(); ++c) {
    const char x = aln.gapped_a[c];
    const char y = aln.gapped_b[c];
    if (x == kGap && y == kGap) {
      throw InputError("malformed alignment: column " + std::to_string(c) + " is gapped in both rows");
    }
    total += (x == kGap || y == kGap) ? scheme.gap_penalty : scheme.substitution(x, y);
  }
  return total;
}

std::string degap(std::string_view gapped) {
  std::string out;
  out.reserve(gapped.size());
  std::copy_if(gapped.begin(), gapped.end(), std::back_inserter(out), [](char c) { return c != kGap; });
  return out;
}

}  // namespace nwalign
