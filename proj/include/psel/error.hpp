#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace psel {

// Base for every data error raised by the library. The CLI maps these to exit
// code 1; anything else escaping is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed bracketed tree. offset() is the 0-based character position at
// which the parser gave up.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Vector lengths that must agree do not.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A similarity mode needs a representation the operand does not carry.
class MissingRepresentationError : public Error {
 public:
  using Error::Error;
};

// Corpus file content rejected during ingest.
class CorpusError : public Error {
 public:
  using Error::Error;
};

// Index file has the wrong magic or an unsupported version.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Index file failed its CRC-32 check (corruption or truncation).
class ChecksumError : public Error {
 public:
  using Error::Error;
};

}  // namespace psel
