#include "nwalign/serial.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace nwalign {

namespace detail {

void fill_row_major(const AlignmentProblem& problem, Matrices& mats) {
  const auto& a = problem.a.residues();
  const auto& b = problem.b.residues();
  ScoreMatrix& s = mats.score;
  TracebackMatrix& t = mats.trace;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const CellResult r = score_cell(s(i - 1, j), s(i, j - 1), s(i - 1, j - 1), a[i - 1], b[j - 1], problem.scheme);
      s(i, j) = r.score;
      t(i, j) = r.direction;
    }
  }
}

}  // namespace detail

PairwiseResult align_serial(const AlignmentProblem& problem) {
  problem.scheme.validate();
  Matrices mats = init_matrices(problem.a.length(), problem.b.length(), problem.scheme);
  detail::fill_row_major(problem, mats);
  Alignment aln = traceback_one(mats.trace, problem.a, problem.b);
  aln.score = mats.score(problem.a.length(), problem.b.length());
  return {std::move(mats.score), std::move(mats.trace), std::move(aln)};
}

Alignment traceback_one(const TracebackMatrix& tb, const Sequence& a, const Sequence& b) {
  if (tb.rows() != a.length() + 1 || tb.cols() != b.length() + 1) {
    throw InvariantError("traceback grid shape does not match the sequences");
  }
  Alignment out;
  out.id_a = a.id();
  out.id_b = b.id();
  out.gapped_a.reserve(a.length() + b.length());
  out.gapped_b.reserve(a.length() + b.length());

  std::size_t i = a.length();
  std::size_t j = b.length();
  while (i > 0 || j > 0) {
    switch (tb(i, j)) {
      case Direction::Diagonal:
        out.gapped_a.push_back(a[--i]);
        out.gapped_b.push_back(b[--j]);
        break;
      case Direction::Vertical:
        out.gapped_a.push_back(a[--i]);
        out.gapped_b.push_back(kGap);
        break;
      case Direction::Horizontal:
        out.gapped_a.push_back(kGap);
        out.gapped_b.push_back(b[--j]);
        break;
      default:
        throw InvariantError("unset traceback cell at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  std::reverse(out.gapped_a.begin(), out.gapped_a.end());
  std::reverse(out.gapped_b.begin(), out.gapped_b.end());
  return out;
}

namespace {

struct Frame {
  std::size_t i;
  std::size_t j;
  int next_branch;  // 0 diagonal, 1 vertical, 2 horizontal, 3 exhausted
};

}  // namespace

CoOptimalAlignments traceback_all(const ScoreMatrix& score, const Sequence& a, const Sequence& b,
                                  const ScoringScheme& scheme, std::size_t cap) {
  if (cap == 0) throw ConfigError("traceback_all: cap must be at least 1");
  if (score.rows() != a.length() + 1 || score.cols() != b.length() + 1) {
    throw InvariantError("score grid shape does not match the sequences");
  }

  // Columns are pushed while walking toward the origin, so both rows are
  // built in reverse and flipped on emit.
  std::string rev_a;
  std::string rev_b;
  std::vector<Frame> stack{{a.length(), b.length(), 0}};
  CoOptimalAlignments out;

  while (!stack.empty()) {
    Frame& top = stack.back();
    const std::size_t i = top.i;
    const std::size_t j = top.j;

    if (i == 0 && j == 0) {
      if (out.alignments.size() == cap) {
        out.truncated = true;
        break;
      }
      Alignment aln;
      aln.gapped_a.assign(rev_a.rbegin(), rev_a.rend());
      aln.gapped_b.assign(rev_b.rbegin(), rev_b.rend());
      aln.score = score(a.length(), b.length());
      aln.id_a = a.id();
      aln.id_b = b.id();
      out.alignments.push_back(std::move(aln));
      stack.pop_back();
      if (!stack.empty()) {
        rev_a.pop_back();
        rev_b.pop_back();
      }
      continue;
    }

    const Score here = score(i, j);
    bool descended = false;
    while (top.next_branch < 3 && !descended) {
      const int branch = top.next_branch++;
      if (branch == 0 && i > 0 && j > 0 && score(i - 1, j - 1) + scheme.substitution(a[i - 1], b[j - 1]) == here) {
        rev_a.push_back(a[i - 1]);
        rev_b.push_back(b[j - 1]);
        stack.push_back({i - 1, j - 1, 0});
        descended = true;
      } else if (branch == 1 && i > 0 && score(i - 1, j) + scheme.gap_penalty == here) {
        rev_a.push_back(a[i - 1]);
        rev_b.push_back(kGap);
        stack.push_back({i - 1, j, 0});
        descended = true;
      } else if (branch == 2 && j > 0 && score(i, j - 1) + scheme.gap_penalty == here) {
        rev_a.push_back(kGap);
        rev_b.push_back(b[j - 1]);
        stack.push_back({i, j - 1, 0});
        descended = true;
      }
    }
    if (descended) continue;

    stack.pop_back();
    if (!stack.empty()) {
      rev_a.pop_back();
      rev_b.pop_back();
    }
  }
  return out;
}

}  // namespace nwalign
