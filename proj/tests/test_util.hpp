#pragma once

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "nwalign/core.hpp"

namespace testutil {

inline std::string random_word(std::mt19937_64& rng, std::string_view alphabet, std::size_t min_len,
                               std::size_t max_len) {
  std::string s(min_len + rng() % (max_len - min_len + 1), 'A');
  for (char& c : s) c = alphabet[rng() % alphabet.size()];
  return s;
}

inline std::string random_dna(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len) {
  return random_word(rng, "ACGT", min_len, max_len);
}

// Every word over `alphabet` with length 0..max_len, shortest first.
inline std::vector<std::string> all_words(std::string_view alphabet, std::size_t max_len) {
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

// Alignment shape invariants: equal rows, no double gaps, rows degap to the inputs.
inline bool well_formed(const nwalign::Alignment& aln, std::string_view a, std::string_view b) {
  if (aln.gapped_a.size() != aln.gapped_b.size()) return false;
  if (aln.length() < std::max(a.size(), b.size()) || aln.length() > a.size() + b.size()) return false;
  for (std::size_t c = 0; c < aln.length(); ++c) {
    if (aln.gapped_a[c] == nwalign::kGap && aln.gapped_b[c] == nwalign::kGap) return false;
  }
  return nwalign::degap(aln.gapped_a) == a && nwalign::degap(aln.gapped_b) == b;
}

}  // namespace testutil
