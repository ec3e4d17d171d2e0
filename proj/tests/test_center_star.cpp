#include <doctest.h>

#include <random>

#include "nwalign/center_star.hpp"
#include "nwalign/msa.hpp"
#include "test_util.hpp"

using namespace nwalign;

namespace {

MsaJob job_of(const std::vector<std::string>& residues, const ScoringScheme& s = {}) {
  MsaJob job;
  job.scheme = s;
  for (std::size_t k = 0; k < residues.size(); ++k) job.sequences.emplace_back("s" + std::to_string(k), residues[k]);
  return job;
}

MsaJob random_job(std::mt19937_64& rng, std::size_t n_min, std::size_t n_max, std::size_t k_max) {
  std::vector<std::string> residues(n_min + rng() % (n_max - n_min + 1));
  for (auto& r : residues) r = testutil::random_dna(rng, 1, k_max);
  return job_of(residues);
}

void check_msa_invariants(const MsaResult& r, const MsaJob& job) {
  REQUIRE(r.rows.size() == job.sequences.size());
  std::size_t longest = 0;
  for (std::size_t k = 0; k < r.rows.size(); ++k) {
    REQUIRE(r.rows[k].size() == r.width());
    REQUIRE(degap(r.rows[k]) == job.sequences[k].residues());
    longest = std::max(longest, job.sequences[k].length());
  }
  REQUIRE(r.width() >= longest);
  for (std::size_t c = 0; c < r.width(); ++c) {
    bool any = false;
    for (const auto& row : r.rows) any |= row[c] != kGap;
    REQUIRE(any);
  }
}

}  // namespace

TEST_SUITE("center_star") {

TEST_CASE("pair_indices") {
  CHECK(pair_indices(2) == std::vector<PairIndex>{{0, 1}});
  CHECK(pair_indices(5).size() == 10);
  CHECK(pair_indices(4) == std::vector<PairIndex>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK_THROWS_AS(pair_indices(1), InputError);
  CHECK_THROWS_AS(pair_indices(0), InputError);
  for (std::size_t n = 2; n <= 200; ++n) REQUIRE(pair_indices(n).size() == n * (n - 1) / 2);
}

TEST_CASE("select_center") {
  SUBCASE("identical sequences pick the lowest index") {
    const auto job = job_of({"ACGT", "ACGT", "ACGT"});
    CHECK(select_center(compute_pair_scores(job, {})) == 0);
  }
  SUBCASE("forced argmax") {
    // Row sums 5, 9, 2.
    PairScoreMatrix m(3);
    m.set(0, 1, 6);
    m.set(0, 2, -1);
    m.set(1, 2, 3);
    REQUIRE(m.row_sum(0) == 5);
    REQUIRE(m.row_sum(1) == 9);
    REQUIRE(m.row_sum(2) == 2);
    CHECK(select_center(m) == 1);
  }
  SUBCASE("random DNA: argmax of directly recomputed row sums") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 50; ++trial) {
      const auto job = random_job(rng, 4, 4, 30);
      std::vector<Score> sums(4, 0);
      for (std::size_t p = 0; p < 4; ++p) {
        for (std::size_t q = 0; q < 4; ++q) {
          if (p != q) sums[p] += align_serial({job.sequences[p], job.sequences[q], job.scheme}).alignment.score;
        }
      }
      const auto expected = static_cast<std::size_t>(std::max_element(sums.begin(), sums.end()) - sums.begin());
      CHECK(select_center(compute_pair_scores(job, {})) == expected);
    }
  }
}

TEST_CASE("pair scores are symmetric in argument order") {
  std::mt19937_64 rng(67);
  const auto job = random_job(rng, 6, 6, 40);
  const auto scores = compute_pair_scores(job, {});
  for (const auto [p, q] : pair_indices(6)) {
    CHECK(scores.at(p, q) == scores.at(q, p));
    CHECK(align_serial({job.sequences[q], job.sequences[p], job.scheme}).alignment.score == scores.at(p, q));
  }
  for (std::size_t p = 0; p < 6; ++p) CHECK(scores.at(p, p) == 0);
}

TEST_CASE("center choice is invariant under positive scaling of the scheme") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    auto job = random_job(rng, 3, 7, 25);
    const std::size_t base = select_center(compute_pair_scores(job, {}));
    for (const Score k : {2, 3, 7}) {
      job.scheme = {k, -k, -k};
      CHECK(select_center(compute_pair_scores(job, {})) == base);
    }
  }
}

TEST_CASE("align_all_to_center") {
  SUBCASE("two sequences reduce to a single pairwise alignment") {
    const auto job = job_of({"GATTACA", "GCATGCU"});
    const auto alns = align_all_to_center(job, 0, {});
    REQUIRE(alns.size() == 1);
    CHECK(alns[0] == align_serial({job.sequences[0], job.sequences[1], job.scheme}).alignment);
  }
  SUBCASE("identical sequences align gap-free") {
    const auto job = job_of({"ACGTT", "ACGTT", "ACGTT", "ACGTT"});
    for (const auto& aln : align_all_to_center(job, 2, {})) {
      CHECK(aln.score == 5);
      CHECK(aln.gapped_a.find(kGap) == std::string::npos);
      CHECK(aln.gapped_b.find(kGap) == std::string::npos);
    }
  }
  SUBCASE("mixed lengths degap to (center, other)") {
    const auto job = job_of({"ACGTAC", "A", "TTTTGGGCA", "CAG"});
    const auto alns = align_all_to_center(job, 2, {Engine::Wavefront, {3, 2}});
    REQUIRE(alns.size() == 3);
    const std::size_t others[] = {0, 1, 3};
    for (std::size_t t = 0; t < 3; ++t) {
      CHECK(testutil::well_formed(alns[t], job.sequences[2].residues(), job.sequences[others[t]].residues()));
    }
  }
  CHECK_THROWS_AS(align_all_to_center(job_of({"A", "C"}), 2, {}), InputError);
}

TEST_CASE("merge_alignments") {
  SUBCASE("two sequences") {
    const auto job = job_of({"GATTACA", "GCATGCU"});
    const auto alns = align_all_to_center(job, 0, {});
    const auto r = merge_alignments(alns, 0, job);
    CHECK(r.rows[0] == alns[0].gapped_a);
    CHECK(r.rows[1] == alns[0].gapped_b);
  }
  SUBCASE("identical sequences stay gap-free") {
    const auto job = job_of({"ACG", "ACG", "ACG"});
    const auto r = merge_alignments(align_all_to_center(job, 0, {}), 0, job);
    for (const auto& row : r.rows) CHECK(row == "ACG");
  }
  SUBCASE("ACT, AT, ACGT: hand-merged union of center gaps") {
    const auto job = job_of({"ACT", "AT", "ACGT"});
    const std::size_t center = select_center(compute_pair_scores(job, {}));
    REQUIRE(center == 0);  // row sums 3, 1, 2
    const auto alns = align_all_to_center(job, center, {});
    // ACT/AT keeps the center gap-free; ACT/ACGT opens one center gap before T.
    REQUIRE(alns[0].gapped_a == "ACT");
    REQUIRE(alns[0].gapped_b == "A-T");
    REQUIRE(alns[1].gapped_a == "AC-T");
    REQUIRE(alns[1].gapped_b == "ACGT");
    const auto r = merge_alignments(alns, center, job);
    CHECK(r.rows == std::vector<std::string>{"AC-T", "A--T", "ACGT"});
    check_msa_invariants(r, job);
  }
  SUBCASE("center in the middle of the input order") {
    const auto job = job_of({"AAT", "AT", "ATT"});
    const auto alns = align_all_to_center(job, 1, {});
    const auto r = merge_alignments(alns, 1, job);
    CHECK(r.center_index == 1);
    check_msa_invariants(r, job);
  }
  SUBCASE("rejects an alignment whose first row is not the center") {
    const auto job = job_of({"ACT", "AT", "ACGT"});
    auto alns = align_all_to_center(job, 0, {});
    alns[1].gapped_a = "AG-T";
    CHECK_THROWS_AS(merge_alignments(alns, 0, job), InputError);
    alns.pop_back();
    CHECK_THROWS_AS(merge_alignments(alns, 0, job), InputError);
  }
}

TEST_CASE("msa invariants on random jobs") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 40; ++trial) {
    const auto job = random_job(rng, 2, 8, 40);
    const auto r = msa(job, {});
    check_msa_invariants(r, job);
    CHECK(r.center_index == select_center(compute_pair_scores(job, {})));
  }
}

TEST_CASE("msa is engine- and rank-invariant") {
  std::mt19937_64 rng(79);
  const auto job = random_job(rng, 5, 5, 60);
  const auto base = msa(job, {});
  MsaOptions wave;
  wave.engine = {Engine::Wavefront, {3, 8}};
  CHECK(msa(job, wave) == base);
  for (const std::size_t ranks : {1, 2, 4}) {
    MsaOptions opts;
    opts.distributor.ranks = ranks;
    CHECK(msa(job, opts) == base);
  }
}

TEST_CASE("msa with two sequences equals the pairwise alignment") {
  const auto job = job_of({"GATTACA", "GCATGCU"});
  const auto r = msa(job, {});
  const auto pair = align_serial({job.sequences[0], job.sequences[1], job.scheme}).alignment;
  CHECK(r.rows[0] == pair.gapped_a);
  CHECK(r.rows[1] == pair.gapped_b);
}

TEST_CASE("msa rejects a single sequence") {
  CHECK_THROWS_WITH_AS(msa(job_of({"ACGT"}), {}), "need at least 2 sequences", InputError);
}

}  // TEST_SUITE
