#pragma once

// Domain types and the scoring recurrence shared by every alignment engine.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nwalign/error.hpp"

namespace nwalign {

using Score = std::int64_t;

inline constexpr char kGap = '-';

struct ScoringScheme {
  Score match_score = 1;
  Score mismatch_score = -1;
  Score gap_penalty = -1;

  // Throws ConfigError unless gap_penalty < 0 and match_score > mismatch_score.
  void validate() const;

  Score substitution(char a, char b) const noexcept { return a == b ? match_score : mismatch_score; }

  friend bool operator==(const ScoringScheme&, const ScoringScheme&) = default;
};

// A named run of uppercase ASCII letters. Construction rejects anything else;
// case folding and whitespace stripping belong to the FASTA reader.
class Sequence {
 public:
  Sequence() = default;
  Sequence(std::string id, std::string residues);

  const std::string& id() const noexcept { return id_; }
  const std::string& residues() const noexcept { return residues_; }
  std::size_t length() const noexcept { return residues_.size(); }
  char operator[](std::size_t i) const noexcept { return residues_[i]; }

  friend bool operator==(const Sequence&, const Sequence&) = default;

 private:
  std::string id_;
  std::string residues_;
};

bool is_residue(char c) noexcept;

// Backtracking direction. The numeric values are part of the matrix format.
enum class Direction : std::uint8_t {
  Unset = 0,
  Diagonal = 1,
  Vertical = 2,
  Horizontal = 3,
};

// rows * cols, or InputError when a grid of `cell_bytes`-sized elements that
// large cannot be addressed on this platform.
std::size_t checked_grid_cells(std::size_t rows, std::size_t cols, std::size_t cell_bytes);

// Cell count of the (m+1) x (n+1) alignment grid, with the same rejection.
std::size_t checked_cell_count(std::size_t m, std::size_t n, std::size_t cell_bytes = sizeof(Score));

// Dense row-major matrix.
template <class T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), cells_(checked_grid_cells(rows, cols, sizeof(T)), fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return cells_.size(); }

  T& operator()(std::size_t i, std::size_t j) noexcept { return cells_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const noexcept { return cells_[i * cols_ + j]; }

  std::span<T> cells() noexcept { return cells_; }
  std::span<const T> cells() const noexcept { return cells_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> cells_;
};

// cell(i,j) is the best score of aligning the first i residues of a with the
// first j residues of b.
using ScoreMatrix = Grid<Score>;
using TracebackMatrix = Grid<Direction>;

struct Alignment {
  std::string gapped_a;
  std::string gapped_b;
  Score score = 0;
  std::string id_a;
  std::string id_b;

  std::size_t length() const noexcept { return gapped_a.size(); }

  friend bool operator==(const Alignment&, const Alignment&) = default;
};

struct CellResult {
  Score score;
  Direction direction;

  friend bool operator==(const CellResult&, const CellResult&) = default;
};

// max(diag + sub(a,b), up + gap, left + gap). Ties resolve diagonal, then
// vertical, then horizontal.
inline CellResult score_cell(Score up, Score left, Score diag, char a_sym, char b_sym,
                             const ScoringScheme& scheme) noexcept {
  CellResult best{diag + scheme.substitution(a_sym, b_sym), Direction::Diagonal};
  if (const Score v = up + scheme.gap_penalty; v > best.score) best = {v, Direction::Vertical};
  if (const Score h = left + scheme.gap_penalty; h > best.score) best = {h, Direction::Horizontal};
  return best;
}

struct Matrices {
  ScoreMatrix score;
  TracebackMatrix trace;
};

// Allocates (m+1) x (n+1) matrices with gap-penalty borders. Interior
// directions start Unset.
Matrices init_matrices(std::size_t m, std::size_t n, const ScoringScheme& scheme);

// Column-wise score of a finished alignment. Throws InputError on a length
// mismatch or a column holding two gaps.
Score score_alignment(const Alignment& aln, const ScoringScheme& scheme);

std::string degap(std::string_view gapped);

}  // namespace nwalign
