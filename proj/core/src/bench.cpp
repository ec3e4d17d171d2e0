#include "nwalign/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <random>

namespace nwalign {

std::string to_string(BenchMode mode) { return mode == BenchMode::Strong ? "strong" : "weak"; }

std::string to_string(Engine engine) { return engine == Engine::Serial ? "serial" : "wavefront"; }

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* raw = std::getenv(kSeedVariable);
  if (raw == nullptr || *raw == '\0') return fallback;
  const std::string text(raw);
  if (text.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError(std::string(kSeedVariable) + " must be a decimal unsigned integer, got '" + text + "'");
  }
  try {
    return std::stoull(text);
  } catch (const std::out_of_range&) {
    throw ConfigError(std::string(kSeedVariable) + " is out of range");
  }
}

std::pair<Sequence, Sequence> synthetic_pair(std::size_t m, std::size_t n, std::uint64_t seed) {
  static constexpr char kBases[] = {'A', 'C', 'G', 'T'};
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n)};
  std::mt19937_64 rng(seq);
  auto draw = [&rng](std::size_t len) {
    std::string s(len, 'A');
    for (char& c : s) c = kBases[rng() & 3u];
    return s;
  };
  std::string a = draw(m);
  std::string b = draw(n);
  return {Sequence("synthetic_a", std::move(a)), Sequence("synthetic_b", std::move(b))};
}

namespace {

using Clock = std::chrono::steady_clock;

void check_settings(const std::vector<std::size_t>& workers_list, std::size_t reps) {
  if (workers_list.empty()) throw ConfigError("bench: workers list is empty");
  if (std::find(workers_list.begin(), workers_list.end(), 0) != workers_list.end()) {
    throw ConfigError("bench: worker counts must be positive");
  }
  if (reps == 0) throw ConfigError("bench: reps must be at least 1");
}

// Warmup, then `reps` timed runs of one configuration.
void time_configuration(BenchMode mode, const AlignmentProblem& problem, const EngineOptions& engine,
                        std::size_t workers_label, std::size_t reps, std::vector<BenchRecord>& out) {
  const Score reference = align_pair(problem, engine).alignment.score;
  for (std::size_t run = 0; run < reps; ++run) {
    const auto start = Clock::now();
    const PairwiseResult result = align_pair(problem, engine);
    const auto elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
    if (result.alignment.score != reference) {
      throw InvariantError("bench: timed run scored " + std::to_string(result.alignment.score) + ", warmup scored " +
                           std::to_string(reference));
    }
    out.push_back({mode, engine.engine, workers_label, problem.a.length(), problem.b.length(), run,
                   static_cast<std::uint64_t>(std::max<std::int64_t>(1, elapsed))});
  }
}

}  // namespace

std::vector<BenchRecord> bench_strong(const StrongScalingSettings& settings) {
  if (settings.sizes.empty()) throw ConfigError("bench strong: sizes list is empty");
  check_settings(settings.workers_list, settings.reps);
  std::vector<BenchRecord> out;
  out.reserve(settings.sizes.size() * settings.workers_list.size() * settings.reps);
  for (const std::size_t size : settings.sizes) {
    auto [a, b] = synthetic_pair(size, size, settings.seed);
    const AlignmentProblem problem{std::move(a), std::move(b), ScoringScheme{}};
    for (const std::size_t w : settings.workers_list) {
      const EngineOptions engine{Engine::Wavefront, {w, settings.grain}};
      time_configuration(BenchMode::Strong, problem, engine, w, settings.reps, out);
    }
  }
  return out;
}

std::size_t weak_side_length(std::size_t base_size, std::size_t workers) {
  return static_cast<std::size_t>(std::llround(static_cast<double>(base_size) * std::sqrt(static_cast<double>(workers))));
}

std::vector<BenchRecord> bench_weak(const WeakScalingSettings& settings) {
  if (settings.base_size == 0) throw ConfigError("bench weak: base size must be at least 1");
  check_settings(settings.workers_list, settings.reps);
  std::vector<BenchRecord> out;
  for (const std::size_t w : settings.workers_list) {
    const std::size_t side = weak_side_length(settings.base_size, w);
    auto [a, b] = synthetic_pair(side, side, settings.seed);
    const AlignmentProblem problem{std::move(a), std::move(b), ScoringScheme{}};
    time_configuration(BenchMode::Weak, problem, {Engine::Serial, {}}, w, settings.reps, out);
    time_configuration(BenchMode::Weak, problem, {Engine::Wavefront, {w, settings.grain}}, w, settings.reps, out);
  }
  return out;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records, std::uint64_t seed) {
  out << "# seed=" << seed << '\n' << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << to_string(r.mode) << ',' << to_string(r.engine) << ',' << r.workers << ',' << r.m << ',' << r.n << ','
        << r.run_index << ',' << r.elapsed_ns << '\n';
  }
}

std::uint64_t median_elapsed(const std::vector<BenchRecord>& records, Engine engine, std::size_t workers,
                             std::size_t m) {
  std::vector<std::uint64_t> times;
  for (const auto& r : records) {
    if (r.engine == engine && r.workers == workers && r.m == m) times.push_back(r.elapsed_ns);
  }
  if (times.empty()) throw InputError("median_elapsed: no matching records");
  std::sort(times.begin(), times.end());
  const std::size_t mid = times.size() / 2;
  return times.size() % 2 == 1 ? times[mid] : (times[mid - 1] + times[mid]) / 2;
}

}  // namespace nwalign
