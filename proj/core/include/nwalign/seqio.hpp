#pragma once

// FASTA in; pairwise text, TSV and gapped FASTA out.

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "nwalign/center_star.hpp"
#include "nwalign/core.hpp"

namespace nwalign {

inline constexpr std::size_t kFastaLineWidth = 60;

struct FastaRecord {
  std::string header;  // text after '>', trailing whitespace trimmed
  std::string body;    // sequence lines joined, whitespace removed, uppercased

  friend bool operator==(const FastaRecord&, const FastaRecord&) = default;
};

enum class FastaMode {
  Unaligned,  // letters only
  Aligned,    // letters and '-'
};

// Throws ParseError (with the offending line) for an empty input, a header
// without sequence lines, sequence data before the first header, or a
// character outside the mode's alphabet.
std::vector<FastaRecord> parse_fasta_records(std::string_view text, FastaMode mode = FastaMode::Unaligned);

std::vector<Sequence> parse_fasta(std::string_view text);
std::vector<Sequence> read_fasta_file(const std::filesystem::path& path);

enum class AlignmentFormat { PairwiseText, Tsv };

// '|' match, '.' mismatch, ' ' gap.
std::string midline(const Alignment& aln);

std::string emit_alignment(const Alignment& aln, AlignmentFormat format);

// Inverse of the TSV form of emit_alignment (one line, trailing newline optional).
Alignment parse_alignment_tsv(std::string_view line);

// Gapped FASTA, input order, center header suffixed with " |center".
std::string emit_msa(const MsaResult& result);

inline constexpr std::string_view kCenterMarker = " |center";

}  // namespace nwalign
