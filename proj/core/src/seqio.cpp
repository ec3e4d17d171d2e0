#include "nwalign/seqio.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace nwalign {

namespace {

bool is_space(char c) noexcept { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view trim_right(std::string_view s) {
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string describe(char c) {
  const auto u = static_cast<unsigned char>(c);
  if (std::isprint(u)) return std::string("'") + c + "'";
  char buf[8];
  std::snprintf(buf, sizeof buf, "0x%02X", u);
  return buf;
}

std::string sanitize_field(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

void append_wrapped(std::string& out, std::string_view body) {
  for (std::size_t k = 0; k < body.size(); k += kFastaLineWidth) {
    out.append(body.substr(k, kFastaLineWidth));
    out.push_back('\n');
  }
  if (body.empty()) out.push_back('\n');
}

}  // namespace

std::vector<FastaRecord> parse_fasta_records(std::string_view text, FastaMode mode) {
  std::vector<FastaRecord> records;
  std::size_t line_no = 0;
  std::size_t header_line = 0;

  auto close_record = [&] {
    if (!records.empty() && records.back().body.empty()) {
      throw ParseError(header_line, "record '" + records.back().header + "' has no sequence lines");
    }
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;

    const std::string_view content = trim_right(line);
    if (content.find_first_not_of(" \t\r\v\f") == std::string_view::npos) continue;

    if (content.front() == '>') {
      close_record();
      std::string_view header = content.substr(1);
      while (!header.empty() && is_space(header.front())) header.remove_prefix(1);
      if (header.empty()) throw ParseError(line_no, "empty FASTA header");
      records.push_back({std::string(header), {}});
      header_line = line_no;
      continue;
    }
    if (records.empty()) throw ParseError(line_no, "sequence data before the first '>' header");

    std::string& body = records.back().body;
    for (std::size_t col = 0; col < content.size(); ++col) {
      const char c = content[col];
      if (is_space(c)) continue;
      const auto u = static_cast<unsigned char>(c);
      if (u < 0x80 && std::isalpha(u)) {
        body.push_back(static_cast<char>(std::toupper(u)));
      } else if (c == kGap && mode == FastaMode::Aligned) {
        body.push_back(c);
      } else {
        throw ParseError(line_no, "invalid character " + describe(c) + " at column " + std::to_string(col + 1));
      }
    }
  }

  if (records.empty()) throw ParseError(line_no == 0 ? 1 : line_no, "no FASTA records found (empty input)");
  close_record();
  return records;
}

std::vector<Sequence> parse_fasta(std::string_view text) {
  std::vector<Sequence> out;
  for (auto& rec : parse_fasta_records(text, FastaMode::Unaligned)) {
    out.emplace_back(std::move(rec.header), std::move(rec.body));
  }
  return out;
}

std::vector<Sequence> read_fasta_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_fasta(buf.str());
}

std::string midline(const Alignment& aln) {
  std::string out(aln.gapped_a.size(), ' ');
  for (std::size_t c = 0; c < out.size() && c < aln.gapped_b.size(); ++c) {
    const char x = aln.gapped_a[c];
    const char y = aln.gapped_b[c];
    if (x == kGap || y == kGap) continue;
    out[c] = x == y ? '|' : '.';
  }
  return out;
}

std::string emit_alignment(const Alignment& aln, AlignmentFormat format) {
  std::string out;
  switch (format) {
    case AlignmentFormat::PairwiseText:
      out.append(aln.gapped_a).push_back('\n');
      out.append(midline(aln)).push_back('\n');
      out.append(aln.gapped_b).push_back('\n');
      out.append("score: ").append(std::to_string(aln.score)).push_back('\n');
      break;
    case AlignmentFormat::Tsv:
      out.append(sanitize_field(aln.id_a)).push_back('\t');
      out.append(sanitize_field(aln.id_b)).push_back('\t');
      out.append(std::to_string(aln.score)).push_back('\t');
      out.append(aln.gapped_a).push_back('\t');
      out.append(aln.gapped_b).push_back('\n');
      break;
  }
  return out;
}

Alignment parse_alignment_tsv(std::string_view line) {
  if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
  std::vector<std::string_view> fields;
  for (std::size_t start = 0;;) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  if (fields.size() != 5) throw ParseError(1, "expected 5 tab-separated fields, got " + std::to_string(fields.size()));

  Alignment aln;
  aln.id_a = fields[0];
  aln.id_b = fields[1];
  const auto [ptr, ec] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), aln.score);
  if (ec != std::errc{} || ptr != fields[2].data() + fields[2].size()) {
    throw ParseError(1, "bad score field '" + std::string(fields[2]) + "'");
  }
  aln.gapped_a = fields[3];
  aln.gapped_b = fields[4];
  return aln;
}

std::string emit_msa(const MsaResult& result) {
  std::string out;
  for (std::size_t k = 0; k < result.rows.size(); ++k) {
    out.push_back('>');
    out.append(k < result.ids.size() ? result.ids[k] : "seq" + std::to_string(k));
    if (k == result.center_index) out.append(kCenterMarker);
    out.push_back('\n');
    append_wrapped(out, result.rows[k]);
  }
  return out;
}

}  // namespace nwalign
