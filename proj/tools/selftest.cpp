#include <algorithm>
#include <ostream>
#include <random>

#include "brute_force.hpp"
#include "cli.hpp"
#include "nwalign/center_star.hpp"
#include "nwalign/wavefront.hpp"

namespace nwalign::cli {

namespace {

// Every string over `alphabet` of length 0..max_len.
std::vector<std::string> all_strings(std::string_view alphabet, std::size_t max_len) {
  std::vector<std::string> out{""};
  for (std::size_t begin = 0, len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k) {
      for (const char c : alphabet) out.push_back(out[k] + c);
    }
    begin = end;
  }
  return out;
}

bool report(std::ostream& out, const std::string& name, std::size_t checked, std::size_t failures) {
  out << (failures == 0 ? "PASS " : "FAIL ") << name << " (" << checked << " cases, " << failures << " failures)\n";
  return failures == 0;
}

}  // namespace

int selftest(std::ostream& out) {
  const ScoringScheme scheme;
  bool ok = true;

  {
    const auto words = all_strings("AC", 5);
    std::size_t checked = 0;
    std::size_t failures = 0;
    for (const auto& a : words) {
      for (const auto& b : words) {
        const Score dp = align_serial({Sequence("a", a), Sequence("b", b), scheme}).alignment.score;
        failures += dp != oracle::best_score(a, b, scheme);
        ++checked;
      }
    }
    ok &= report(out, "serial score equals exhaustive search, {A,C} lengths 0-5", checked, failures);
  }

  {
    const auto words = all_strings("AG", 3);
    std::size_t failures = 0;
    for (const auto& a : words) {
      for (const auto& b : words) {
        const PairwiseResult r = align_serial({Sequence("a", a), Sequence("b", b), scheme});
        std::vector<oracle::GappedPair> got;
        for (const auto& aln : traceback_all(r.score, Sequence("a", a), Sequence("b", b), scheme, kUncapped).alignments) {
          got.emplace_back(aln.gapped_a, aln.gapped_b);
        }
        std::sort(got.begin(), got.end());
        failures += got != oracle::optimal_alignments(a, b, scheme);
      }
    }
    ok &= report(out, "co-optimal enumeration equals exhaustive search, {A,G} lengths 0-3", words.size() * words.size(),
                 failures);
  }

  {
    std::mt19937_64 rng(7);
    std::size_t failures = 0;
    constexpr std::size_t kPairs = 100;
    for (std::size_t k = 0; k < kPairs; ++k) {
      auto draw = [&rng] {
        std::string s(rng() % 96, 'A');
        for (char& c : s) c = "ACGT"[rng() % 4];
        return s;
      };
      const AlignmentProblem problem{Sequence("a", draw()), Sequence("b", draw()), scheme};
      const PairwiseResult serial = align_serial(problem);
      const PairwiseResult wave = align_wavefront(problem, {1 + k % 4, 1 + k % 8});
      failures += !(serial.score == wave.score && serial.trace == wave.trace && serial.alignment == wave.alignment);
    }
    ok &= report(out, "wavefront matrices equal serial, random DNA lengths 0-95", kPairs, failures);
  }

  return ok ? kSuccess : kInternal;
}

}  // namespace nwalign::cli
