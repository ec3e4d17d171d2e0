#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "nwalign/bench.hpp"
#include "nwalign/msa.hpp"
#include "nwalign/seqio.hpp"
#include "nwalign/socket.hpp"

namespace nwalign::cli {

namespace {

struct SchemeFlags {
  Score match = 1;
  Score mismatch = -1;
  Score gap = -1;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--match", match, "Match score")->capture_default_str();
    cmd.add_option("--mismatch", mismatch, "Mismatch score")->capture_default_str();
    cmd.add_option("--gap", gap, "Gap penalty (negative)")->capture_default_str();
  }

  ScoringScheme scheme() const { return {match, mismatch, gap}; }
};

struct EngineFlags {
  Engine engine = Engine::Serial;
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::size_t grain = 64;

  void add_to(CLI::App& cmd) {
    const std::map<std::string, Engine> names{{"serial", Engine::Serial}, {"wavefront", Engine::Wavefront}};
    cmd.add_option("--engine", engine, "Pairwise engine")->transform(CLI::CheckedTransformer(names, CLI::ignore_case));
    cmd.add_option("--workers", workers, "Wavefront worker threads")->capture_default_str();
    cmd.add_option("--grain", grain, "Cells per wavefront work unit")->capture_default_str();
  }

  EngineOptions options() const { return {engine, {workers, grain}}; }
};

struct AlignFlags {
  std::string fasta;
  SchemeFlags scheme;
  EngineFlags engine;
  std::size_t all_paths = 0;
  AlignmentFormat format = AlignmentFormat::PairwiseText;
};

struct MsaFlags {
  std::string fasta;
  SchemeFlags scheme;
  EngineFlags engine;
  std::size_t ranks = 1;
  Transport transport = Transport::InProcess;
  std::vector<std::string> connect;
  std::int64_t timeout_ms = 60'000;
};

struct WorkerFlags {
  std::string listen;
  std::size_t sessions = 0;
};

struct BenchFlags {
  std::vector<std::size_t> sizes{1000};
  std::size_t base_size = 500;
  std::vector<std::size_t> workers_list{1, 2, 4};
  std::size_t reps = 5;
  std::size_t grain = 64;
  std::string out;
};

int do_align(const AlignFlags& f, std::ostream& out) {
  const std::vector<Sequence> seqs = read_fasta_file(f.fasta);
  if (seqs.size() < 2) throw InputError("need at least 2 sequences");
  const AlignmentProblem problem{seqs[0], seqs[1], f.scheme.scheme()};
  const PairwiseResult result = align_pair(problem, f.engine.options());
  if (f.all_paths == 0) {
    out << emit_alignment(result.alignment, f.format);
    return kSuccess;
  }
  const CoOptimalAlignments all = traceback_all(result.score, problem.a, problem.b, problem.scheme, f.all_paths);
  for (std::size_t k = 0; k < all.alignments.size(); ++k) {
    if (k > 0 && f.format == AlignmentFormat::PairwiseText) out << '\n';
    out << emit_alignment(all.alignments[k], f.format);
  }
  if (all.truncated) out << "# truncated at " << f.all_paths << " alignments\n";
  return kSuccess;
}

int do_msa(const MsaFlags& f, std::ostream& out) {
  MsaJob job{read_fasta_file(f.fasta), f.scheme.scheme()};
  MsaOptions opts;
  opts.engine = f.engine.options();
  opts.distributor.ranks = f.ranks;
  opts.distributor.transport = f.transport;
  opts.distributor.chunk_timeout = std::chrono::milliseconds(f.timeout_ms);
  for (const auto& ep : f.connect) opts.distributor.endpoints.push_back(Endpoint::parse(ep));
  out << emit_msa(msa(job, opts));
  return kSuccess;
}

int do_worker(const WorkerFlags& f, std::ostream& err) {
  WorkerServer server(Endpoint::parse(f.listen));
  err << "worker listening on " << server.endpoint().to_string() << std::endl;
  server.serve(f.sessions);
  return kSuccess;
}

int do_bench(const std::string& mode, const BenchFlags& f, std::ostream& out) {
  const std::uint64_t seed = seed_from_env();
  std::vector<BenchRecord> records;
  if (mode == "strong") {
    records = bench_strong({f.sizes, f.workers_list, f.reps, f.grain, seed});
  } else {
    records = bench_weak({f.base_size, f.workers_list, f.reps, f.grain, seed});
  }
  if (f.out.empty() || f.out == "-") {
    write_bench_csv(out, records, seed);
    return kSuccess;
  }
  std::ofstream file(f.out);
  if (!file) throw InputError("cannot write " + f.out);
  write_bench_csv(file, records, seed);
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Needleman-Wunsch global alignment toolkit", "nwalign"};
  app.require_subcommand(1);

  AlignFlags align;
  auto* align_cmd = app.add_subcommand("align", "Align the first two records of a FASTA file");
  align_cmd->add_option("fasta", align.fasta, "Input FASTA")->required();
  align.scheme.add_to(*align_cmd);
  align.engine.add_to(*align_cmd);
  align_cmd->add_option("--all-paths", align.all_paths, "Print up to CAP co-optimal alignments");
  const std::map<std::string, AlignmentFormat> formats{{"pairwise-text", AlignmentFormat::PairwiseText},
                                                       {"text", AlignmentFormat::PairwiseText},
                                                       {"tsv", AlignmentFormat::Tsv}};
  align_cmd->add_option("--format", align.format, "pairwise-text or tsv")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  MsaFlags msa_flags;
  auto* msa_cmd = app.add_subcommand("msa", "Center-star multiple alignment of a FASTA file");
  msa_cmd->add_option("fasta", msa_flags.fasta, "Input FASTA")->required();
  msa_flags.scheme.add_to(*msa_cmd);
  msa_flags.engine.add_to(*msa_cmd);
  msa_cmd->add_option("--ranks", msa_flags.ranks, "Distributor ranks")->check(CLI::PositiveNumber);
  const std::map<std::string, Transport> transports{{"in-process", Transport::InProcess},
                                                    {"socket", Transport::Socket}};
  msa_cmd->add_option("--transport", msa_flags.transport, "in-process or socket")
      ->transform(CLI::CheckedTransformer(transports, CLI::ignore_case));
  msa_cmd->add_option("--connect", msa_flags.connect, "Worker endpoints host:port (socket transport)")
      ->delimiter(',');
  msa_cmd->add_option("--timeout-ms", msa_flags.timeout_ms, "Per-chunk timeout")->check(CLI::PositiveNumber);

  WorkerFlags worker;
  auto* worker_cmd = app.add_subcommand("worker", "Serve as a socket rank");
  worker_cmd->add_option("--listen", worker.listen, "host:port to listen on")->required();
  worker_cmd->add_option("--sessions", worker.sessions, "Exit after this many sessions (0 = never)");

  BenchFlags bench;
  std::string bench_mode;
  auto* bench_cmd = app.add_subcommand("bench", "Strong or weak scaling harness (CSV)");
  bench_cmd->add_option("mode", bench_mode, "strong or weak")->required()->check(CLI::IsMember({"strong", "weak"}));
  bench_cmd->add_option("--sizes", bench.sizes, "Problem side lengths (strong)")->delimiter(',');
  bench_cmd->add_option("--base-size", bench.base_size, "Side length at one worker (weak)");
  bench_cmd->add_option("--workers-list", bench.workers_list, "Worker counts")->delimiter(',');
  bench_cmd->add_option("--reps", bench.reps, "Timed repetitions per configuration");
  bench_cmd->add_option("--grain", bench.grain, "Cells per wavefront work unit");
  bench_cmd->add_option("--out", bench.out, "CSV output path (default stdout)");

  app.add_subcommand("selftest", "Run oracle-equivalence checks");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsage;
  }

  try {
    if (*align_cmd) return do_align(align, out);
    if (*msa_cmd) return do_msa(msa_flags, out);
    if (*worker_cmd) return do_worker(worker, err);
    if (*bench_cmd) return do_bench(bench_mode, bench, out);
    return selftest(out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace nwalign::cli
