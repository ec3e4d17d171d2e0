#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nwalign {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed user input: bad residues, empty files, impossible shapes.
class InputError : public Error {
 public:
  using Error::Error;
};

// Rejected configuration (zero workers, cap of zero, inconsistent scheme).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// An internal contract was broken. Seeing one of these means an engine bug.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// FASTA / TSV parse failure with the 1-based line it was found on.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Malformed frame on the coordinator/worker wire.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// A rank failed, timed out, or sent something inconsistent with its assignment.
class RankError : public Error {
 public:
  RankError(std::size_t rank, const std::string& what)
      : Error("rank " + std::to_string(rank) + ": " + what), rank_(rank) {}

  std::size_t rank() const noexcept { return rank_; }

 private:
  std::size_t rank_;
};

}  // namespace nwalign
