#pragma once

// Strong/weak scaling harness for the pairwise engines. Inputs are synthetic
// DNA drawn from a seeded generator, so every configuration aligns the same
// sequences. Timing covers matrix fill and traceback only.

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "nwalign/center_star.hpp"

namespace nwalign {

enum class BenchMode { Strong, Weak };

struct BenchRecord {
  BenchMode mode = BenchMode::Strong;
  Engine engine = Engine::Wavefront;
  std::size_t workers = 1;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t run_index = 0;
  std::uint64_t elapsed_ns = 1;
};

inline constexpr std::uint64_t kDefaultSeed = 1970;
inline constexpr const char* kSeedVariable = "NW_SEED";
inline constexpr const char* kCsvHeader = "mode,engine,workers,m,n,run_index,elapsed_ns";

// NW_SEED as a decimal unsigned integer, or `fallback` when unset. Throws
// ConfigError when set to anything else.
std::uint64_t seed_from_env(std::uint64_t fallback = kDefaultSeed);

// Two uniform {A,C,G,T} sequences of lengths m and n, a pure function of
// (m, n, seed).
std::pair<Sequence, Sequence> synthetic_pair(std::size_t m, std::size_t n, std::uint64_t seed);

struct StrongScalingSettings {
  std::vector<std::size_t> sizes{1000};
  std::vector<std::size_t> workers_list{1, 2, 4};
  std::size_t reps = 5;
  std::size_t grain = 64;
  std::uint64_t seed = kDefaultSeed;
};

struct WeakScalingSettings {
  std::size_t base_size = 500;
  std::vector<std::size_t> workers_list{1, 2, 4};
  std::size_t reps = 5;
  std::size_t grain = 64;
  std::uint64_t seed = kDefaultSeed;
};

// sizes x workers x reps wavefront records; one untimed warmup per
// configuration. Throws InvariantError if a timed run's score differs from
// the warmup's.
std::vector<BenchRecord> bench_strong(const StrongScalingSettings& settings);

// Side length for W workers: round(base * sqrt(W)), so the cell count grows
// in proportion to W.
std::size_t weak_side_length(std::size_t base_size, std::size_t workers);

// Per worker count: serial and wavefront records on the same square problem.
std::vector<BenchRecord> bench_weak(const WeakScalingSettings& settings);

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records, std::uint64_t seed);

// Median elapsed_ns over the records matching (engine, workers, m). Throws
// InputError when none match.
std::uint64_t median_elapsed(const std::vector<BenchRecord>& records, Engine engine, std::size_t workers,
                             std::size_t m);

std::string to_string(BenchMode mode);
std::string to_string(Engine engine);

}  // namespace nwalign
