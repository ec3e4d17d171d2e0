#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "brute_force.hpp"
#include "nwalign/serial.hpp"
#include "test_util.hpp"

using namespace nwalign;

namespace {

PairwiseResult run(const std::string& a, const std::string& b, const ScoringScheme& s = {}) {
  return align_serial({Sequence("a", a), Sequence("b", b), s});
}

std::vector<oracle::GappedPair> as_pairs(const CoOptimalAlignments& all) {
  std::vector<oracle::GappedPair> out;
  for (const auto& aln : all.alignments) out.emplace_back(aln.gapped_a, aln.gapped_b);
  std::sort(out.begin(), out.end());
  return out;
}

// Every alignment, no pruning. Only usable for tiny inputs.
Score naive_best(std::string_view a, std::string_view b, const ScoringScheme& s) {
  if (a.empty()) return static_cast<Score>(b.size()) * s.gap_penalty;
  if (b.empty()) return static_cast<Score>(a.size()) * s.gap_penalty;
  return std::max({naive_best(a.substr(1), b.substr(1), s) + s.substitution(a[0], b[0]),
                   naive_best(a.substr(1), b, s) + s.gap_penalty, naive_best(a, b.substr(1), s) + s.gap_penalty});
}

}  // namespace

TEST_SUITE("serial_nw") {

TEST_CASE("align_serial examples") {
  const auto one = run("A", "A");
  CHECK(one.alignment.score == 1);
  CHECK(one.alignment.gapped_a == "A");
  CHECK(one.alignment.gapped_b == "A");

  const auto border = run("", "AA");
  CHECK(border.alignment.score == -2);
  CHECK(border.alignment.gapped_a == "--");
  CHECK(border.alignment.gapped_b == "AA");

  REQUIRE(oracle::best_score("GATTACA", "GCATGCU", {}) == 0);
  CHECK(run("GATTACA", "GCATGCU").alignment.score == 0);
  CHECK(run("", "").alignment.length() == 0);
}

TEST_CASE("every interior traceback cell is set after a fill") {
  const auto r = run("GATTACA", "GCATGCU");
  for (std::size_t i = 1; i < r.trace.rows(); ++i) {
    for (std::size_t j = 1; j < r.trace.cols(); ++j) CHECK(r.trace(i, j) != Direction::Unset);
  }
}

TEST_CASE("borders decrease by the gap penalty") {
  const ScoringScheme s{3, -2, -4};
  const auto r = run("ACGTAC", "TTGA", s);
  for (std::size_t i = 1; i < r.score.rows(); ++i) CHECK(r.score(i, 0) - r.score(i - 1, 0) == -4);
  for (std::size_t j = 1; j < r.score.cols(); ++j) CHECK(r.score(0, j) - r.score(0, j - 1) == -4);
}

TEST_CASE("traceback_one") {
  TracebackMatrix tb(2, 2, Direction::Unset);
  tb(1, 1) = Direction::Diagonal;
  const Alignment aa = traceback_one(tb, Sequence("a", "A"), Sequence("b", "A"));
  CHECK(aa.gapped_a == "A");
  CHECK(aa.gapped_b == "A");

  const Matrices col = init_matrices(1, 0, {});
  const Alignment a_gap = traceback_one(col.trace, Sequence("a", "A"), Sequence("b", ""));
  CHECK(a_gap.gapped_a == "A");
  CHECK(a_gap.gapped_b == "-");

  const auto gat = run("GAT", "GTT");
  CHECK(score_alignment(gat.alignment, {}) == gat.score(3, 3));

  SUBCASE("unset cell is an engine bug") {
    const Matrices fresh = init_matrices(2, 2, {});
    CHECK_THROWS_AS(traceback_one(fresh.trace, Sequence("a", "AC"), Sequence("b", "AC")), InvariantError);
  }
  SUBCASE("shape mismatch") {
    CHECK_THROWS_AS(traceback_one(tb, Sequence("a", "AC"), Sequence("b", "A")), InvariantError);
  }
}

TEST_CASE("traceback_all examples") {
  const auto one = run("A", "A");
  const auto all_one = traceback_all(one.score, Sequence("a", "A"), Sequence("b", "A"), {}, kUncapped);
  CHECK(all_one.alignments.size() == 1);
  CHECK_FALSE(all_one.truncated);

  const auto ag = run("AG", "GA");
  const auto all_ag = traceback_all(ag.score, Sequence("a", "AG"), Sequence("b", "GA"), {}, kUncapped);
  for (const auto& aln : all_ag.alignments) {
    CHECK(aln.score == ag.alignment.score);
    CHECK(score_alignment(aln, {}) == ag.alignment.score);
    CHECK(testutil::well_formed(aln, "AG", "GA"));
  }
  CHECK(as_pairs(all_ag) == oracle::optimal_alignments("AG", "GA", {}));
}

TEST_CASE("traceback_all with cap 1 is the canonical traceback") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = testutil::random_dna(rng, 0, 30);
    const auto b = testutil::random_dna(rng, 0, 30);
    const auto r = run(a, b);
    const auto first = traceback_all(r.score, Sequence("a", a), Sequence("b", b), {}, 1);
    REQUIRE(first.alignments.size() == 1);
    CHECK(first.alignments.front() == r.alignment);
  }
}

TEST_CASE("traceback_all truncation") {
  // "AA" vs "A" has exactly two optimal alignments.
  const auto r = run("AA", "A");
  const auto capped = traceback_all(r.score, Sequence("a", "AA"), Sequence("b", "A"), {}, 1);
  CHECK(capped.alignments.size() == 1);
  CHECK(capped.truncated);
  const auto exact = traceback_all(r.score, Sequence("a", "AA"), Sequence("b", "A"), {}, 2);
  CHECK(exact.alignments.size() == 2);
  CHECK_FALSE(exact.truncated);
  CHECK_THROWS_AS(traceback_all(r.score, Sequence("a", "AA"), Sequence("b", "A"), {}, 0), ConfigError);
}

TEST_CASE("traceback_all default cap is 256") {
  // 12 A's against 6 A's: C(12,6) = 924 optimal placements of the gaps.
  const std::string a(12, 'A');
  const std::string b(6, 'A');
  const auto r = run(a, b);
  const auto all = traceback_all(r.score, Sequence("a", a), Sequence("b", b), {});
  CHECK(all.alignments.size() == kDefaultPathCap);
  CHECK(all.truncated);
}

TEST_CASE("traceback_all results are optimal and duplicate-free") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = testutil::random_word(rng, "AC", 0, 9);
    const auto b = testutil::random_word(rng, "AC", 0, 9);
    const auto r = run(a, b);
    const auto all = traceback_all(r.score, Sequence("a", a), Sequence("b", b), {}, kUncapped);
    std::set<oracle::GappedPair> unique;
    for (const auto& aln : all.alignments) {
      REQUIRE(score_alignment(aln, {}) == r.alignment.score);
      unique.emplace(aln.gapped_a, aln.gapped_b);
    }
    CHECK(unique.size() == all.alignments.size());
  }
}

TEST_CASE("align_serial equals the exhaustive oracle") {
  SUBCASE("all pairs over {A,C} up to length 5") {
    const auto words = testutil::all_words("AC", 5);
    for (const auto& a : words) {
      for (const auto& b : words) REQUIRE(run(a, b).alignment.score == oracle::best_score(a, b, {}));
    }
  }
  SUBCASE("500 random DNA pairs up to length 10") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 500; ++trial) {
      const auto a = testutil::random_dna(rng, 0, 10);
      const auto b = testutil::random_dna(rng, 0, 10);
      REQUIRE(run(a, b).alignment.score == oracle::best_score(a, b, {}));
    }
  }
  SUBCASE("non-default scheme") {
    const ScoringScheme s{2, -3, -2};
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 200; ++trial) {
      const auto a = testutil::random_dna(rng, 0, 8);
      const auto b = testutil::random_dna(rng, 0, 8);
      REQUIRE(run(a, b, s).alignment.score == oracle::best_score(a, b, s));
    }
  }
}

TEST_CASE("oracle sanity: alignment counts are Delannoy numbers") {
  CHECK(oracle::alignment_count(1, 1) == 3);
  CHECK(oracle::alignment_count(2, 2) == 13);
  CHECK(oracle::alignment_count(7, 7) == 48639);
  // Only the gap-free alignment reaches zero here.
  CHECK(oracle::optimal_alignments("AC", "AC", {0, -1, -1}).size() == 1);
  CHECK(oracle::optimal_alignments("", "ACG", {}).size() == 1);
}

TEST_CASE("oracle pruning agrees with plain enumeration") {
  const auto words = testutil::all_words("ACG", 4);
  for (const ScoringScheme& s : {ScoringScheme{}, ScoringScheme{2, -3, -1}, ScoringScheme{-1, -2, -1}}) {
    for (const auto& a : words) {
      for (const auto& b : words) REQUIRE(oracle::best_score(a, b, s) == naive_best(a, b, s));
    }
  }
}

}  // TEST_SUITE
