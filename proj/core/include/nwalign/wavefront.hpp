#pragma once

// Parallel pairwise engine. Every interior cell is a unit of work that
// becomes ready once its upper, left and upper-left neighbours are
// computed. Cells are handed to a worker pool in anti-diagonal order and a
// per-diagonal completion count acts as the readiness gate, so the result is
// bit-identical to align_serial for any pool size or grain.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "nwalign/core.hpp"
#include "nwalign/serial.hpp"

namespace nwalign {

struct WavefrontConfig {
  std::size_t workers = 1;
  std::size_t grain = 64;  // cells per scheduled chunk

  void validate() const;
};

struct CellCoord {
  std::size_t i;
  std::size_t j;

  friend bool operator==(const CellCoord&, const CellCoord&) = default;
  friend auto operator<=>(const CellCoord&, const CellCoord&) = default;
};

// Half-open row range [i_begin, i_end) on a single anti-diagonal.
struct CellRange {
  std::size_t i_begin;
  std::size_t i_end;

  std::size_t size() const noexcept { return i_end - i_begin; }
};

// All interior cells with i + j == diagonal, split into chunks of at most
// `grain` cells, ordered by increasing row.
struct DiagonalBatch {
  std::size_t diagonal;
  std::vector<CellRange> chunks;

  std::size_t width() const noexcept;
  std::vector<CellCoord> cells() const;
};

// Batches in increasing diagonal order; each interior cell appears once.
std::vector<DiagonalBatch> schedule_antidiagonals(std::size_t m, std::size_t n, std::size_t grain);

// One computed flag per cell. Border cells start set. A flag is published with
// release semantics after the cell's score and direction are written.
class ReadyFlags {
 public:
  ReadyFlags(std::size_t rows, std::size_t cols);

  bool is_set(std::size_t i, std::size_t j) const noexcept {
    return flags_[i * cols_ + j].load(std::memory_order_acquire) != 0;
  }
  void set(std::size_t i, std::size_t j) noexcept { flags_[i * cols_ + j].store(1, std::memory_order_release); }
  bool all_set() const noexcept;

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::unique_ptr<std::atomic<std::uint8_t>[]> flags_;
};

PairwiseResult align_wavefront(const AlignmentProblem& problem, const WavefrontConfig& cfg);

// Record of an instrumented run. `write_order(i,j)` is the global sequence
// number at which the cell was published (0 for borders, which exist before
// the run starts). `early_reads` counts neighbour reads that happened before
// the neighbour's ready flag was visible.
struct WavefrontAudit {
  Grid<std::uint64_t> write_order;
  std::size_t early_reads = 0;
  bool all_ready = false;
};

// align_wavefront with every dependency read checked against ReadyFlags.
std::pair<PairwiseResult, WavefrontAudit> align_wavefront_audited(const AlignmentProblem& problem,
                                                                  const WavefrontConfig& cfg);

}  // namespace nwalign
