#include "nwalign/wavefront.hpp"

#include <algorithm>
#include <thread>

namespace nwalign {

void WavefrontConfig::validate() const {
  if (workers == 0) throw ConfigError("wavefront: workers must be at least 1");
  if (grain == 0) throw ConfigError("wavefront: grain must be at least 1");
}

namespace {

// Interior rows [lo, hi) on anti-diagonal d of an (m+1) x (n+1) grid.
CellRange diagonal_rows(std::size_t d, std::size_t m, std::size_t n) noexcept {
  const std::size_t lo = d > n ? std::max<std::size_t>(1, d - n) : 1;
  const std::size_t hi = std::min(m, d - 1) + 1;
  return {lo, std::max(lo, hi)};
}

std::size_t ceil_div(std::size_t a, std::size_t b) noexcept { return a / b + (a % b != 0); }

inline void cpu_relax() noexcept {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_ia32_pause();
#endif
}

}  // namespace

std::size_t DiagonalBatch::width() const noexcept {
  std::size_t w = 0;
  for (const auto& c : chunks) w += c.size();
  return w;
}

std::vector<CellCoord> DiagonalBatch::cells() const {
  std::vector<CellCoord> out;
  out.reserve(width());
  for (const auto& c : chunks) {
    for (std::size_t i = c.i_begin; i < c.i_end; ++i) out.push_back({i, diagonal - i});
  }
  return out;
}

std::vector<DiagonalBatch> schedule_antidiagonals(std::size_t m, std::size_t n, std::size_t grain) {
  if (grain == 0) throw ConfigError("schedule_antidiagonals: grain must be at least 1");
  std::vector<DiagonalBatch> out;
  if (m == 0 || n == 0) return out;
  out.reserve(m + n - 1);
  for (std::size_t d = 2; d <= m + n; ++d) {
    const CellRange rows = diagonal_rows(d, m, n);
    DiagonalBatch batch{d, {}};
    for (std::size_t i = rows.i_begin; i < rows.i_end; i += grain) {
      batch.chunks.push_back({i, std::min(i + grain, rows.i_end)});
    }
    out.push_back(std::move(batch));
  }
  return out;
}

ReadyFlags::ReadyFlags(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), flags_(new std::atomic<std::uint8_t>[checked_grid_cells(rows, cols, 1)]) {
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      flags_[i * cols + j].store(i == 0 || j == 0 ? 1 : 0, std::memory_order_relaxed);
    }
  }
}

bool ReadyFlags::all_set() const noexcept {
  const std::size_t count = rows_ * cols_;
  for (std::size_t k = 0; k < count; ++k) {
    if (flags_[k].load(std::memory_order_acquire) == 0) return false;
  }
  return true;
}

namespace {

// One fill of the interior. Chunks are claimed from a single ticket counter
// in schedule order; a chunk on diagonal d starts only after every chunk of
// d-1 has been published (which in turn waited for d-2).
template <bool kAudit>
class WavefrontFill {
 public:
  WavefrontFill(const AlignmentProblem& problem, std::size_t grain, Matrices& mats, ReadyFlags& ready,
                Grid<std::uint64_t>* write_order)
      : a_(problem.a.residues()),
        b_(problem.b.residues()),
        scheme_(problem.scheme),
        m_(problem.a.length()),
        n_(problem.b.length()),
        grain_(grain),
        mats_(mats),
        ready_(ready),
        write_order_(write_order) {
    const std::size_t diagonals = (m_ == 0 || n_ == 0) ? 0 : m_ + n_ - 1;
    offsets_.assign(diagonals + 1, 0);
    for (std::size_t k = 0; k < diagonals; ++k) {
      offsets_[k + 1] = offsets_[k] + ceil_div(diagonal_rows(k + 2, m_, n_).size(), grain_);
    }
    done_ = std::make_unique<std::atomic<std::uint64_t>[]>(std::max<std::size_t>(diagonals, 1));
  }

  void run(std::size_t workers) {
    const std::size_t useful = std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, total_chunks()));
    {
      std::vector<std::jthread> pool;
      pool.reserve(useful - 1);
      for (std::size_t w = 1; w < useful; ++w) pool.emplace_back([this] { work(); });
      work();
    }
  }

  std::size_t early_reads() const noexcept { return early_reads_.load(); }

 private:
  std::uint64_t total_chunks() const noexcept { return offsets_.back(); }
  std::uint64_t chunks_on(std::size_t k) const noexcept { return offsets_[k + 1] - offsets_[k]; }

  void work() {
    const std::uint64_t total = total_chunks();
    std::size_t k = 0;  // diagonal index; diagonal number is k + 2
    for (;;) {
      const std::uint64_t ticket = next_ticket_.fetch_add(1, std::memory_order_relaxed);
      if (ticket >= total) return;
      while (offsets_[k + 1] <= ticket) ++k;
      if (k > 0) wait_for_diagonal(k - 1);

      const std::size_t d = k + 2;
      const CellRange rows = diagonal_rows(d, m_, n_);
      const std::size_t begin = rows.i_begin + static_cast<std::size_t>(ticket - offsets_[k]) * grain_;
      const std::size_t end = std::min(begin + grain_, rows.i_end);
      for (std::size_t i = begin; i < end; ++i) compute(i, d - i);

      if (done_[k].fetch_add(1, std::memory_order_release) + 1 == chunks_on(k)) done_[k].notify_all();
    }
  }

  // Spin briefly, then sleep until the last chunk of diagonal k notifies.
  // Sleeping matters when workers outnumber cores: a spinning or yielding
  // waiter can keep the chunk it waits on off the CPU.
  void wait_for_diagonal(std::size_t k) const noexcept {
    const std::uint64_t expected = chunks_on(k);
    std::uint64_t seen;
    for (unsigned spins = 0; (seen = done_[k].load(std::memory_order_acquire)) != expected; ++spins) {
      if (spins < 64) {
        cpu_relax();
      } else {
        done_[k].wait(seen, std::memory_order_acquire);
      }
    }
  }

  void compute(std::size_t i, std::size_t j) {
    if constexpr (kAudit) {
      const std::size_t early = !ready_.is_set(i - 1, j) + !ready_.is_set(i, j - 1) + !ready_.is_set(i - 1, j - 1);
      if (early != 0) early_reads_.fetch_add(early, std::memory_order_relaxed);
    }
    ScoreMatrix& s = mats_.score;
    const CellResult r = score_cell(s(i - 1, j), s(i, j - 1), s(i - 1, j - 1), a_[i - 1], b_[j - 1], scheme_);
    s(i, j) = r.score;
    mats_.trace(i, j) = r.direction;
    if constexpr (kAudit) {
      (*write_order_)(i, j) = sequence_.fetch_add(1, std::memory_order_relaxed) + 1;
    }
    ready_.set(i, j);
  }

  const std::string& a_;
  const std::string& b_;
  const ScoringScheme scheme_;
  const std::size_t m_;
  const std::size_t n_;
  const std::size_t grain_;
  Matrices& mats_;
  ReadyFlags& ready_;
  Grid<std::uint64_t>* write_order_;

  std::vector<std::uint64_t> offsets_;  // prefix sums of chunk counts per diagonal
  std::unique_ptr<std::atomic<std::uint64_t>[]> done_;
  std::atomic<std::uint64_t> next_ticket_{0};
  std::atomic<std::uint64_t> sequence_{0};
  std::atomic<std::size_t> early_reads_{0};
};

PairwiseResult finish(const AlignmentProblem& problem, Matrices& mats) {
  Alignment aln = traceback_one(mats.trace, problem.a, problem.b);
  aln.score = mats.score(problem.a.length(), problem.b.length());
  return {std::move(mats.score), std::move(mats.trace), std::move(aln)};
}

}  // namespace

PairwiseResult align_wavefront(const AlignmentProblem& problem, const WavefrontConfig& cfg) {
  cfg.validate();
  problem.scheme.validate();
  Matrices mats = init_matrices(problem.a.length(), problem.b.length(), problem.scheme);
  ReadyFlags ready(mats.score.rows(), mats.score.cols());
  WavefrontFill<false>(problem, cfg.grain, mats, ready, nullptr).run(cfg.workers);
  if (!ready.all_set()) throw InvariantError("wavefront: cells left uncomputed");
  return finish(problem, mats);
}

std::pair<PairwiseResult, WavefrontAudit> align_wavefront_audited(const AlignmentProblem& problem,
                                                                  const WavefrontConfig& cfg) {
  cfg.validate();
  problem.scheme.validate();
  Matrices mats = init_matrices(problem.a.length(), problem.b.length(), problem.scheme);
  ReadyFlags ready(mats.score.rows(), mats.score.cols());
  WavefrontAudit audit{Grid<std::uint64_t>(mats.score.rows(), mats.score.cols(), 0), 0, false};
  WavefrontFill<true> fill(problem, cfg.grain, mats, ready, &audit.write_order);
  fill.run(cfg.workers);
  audit.early_reads = fill.early_reads();
  audit.all_ready = ready.all_set();
  return {finish(problem, mats), std::move(audit)};
}

}  // namespace nwalign
