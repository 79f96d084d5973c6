#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sparsekit {

/// Base class of every error thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Non-conformable vector/matrix shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument values: empty inputs, bad configs, guard violations.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// Text-level parsing failures (filenames, PGM headers, flag values).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Filesystem-level failures (open, read, write).
class IoError : public Error {
 public:
  using Error::Error;
};

/// Structurally malformed dictionary file (bad magic, inconsistent counts).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Dictionary file written by an incompatible format version.
class VersionError : public FormatError {
 public:
  VersionError(std::uint16_t found, std::uint16_t expected)
      : FormatError("dictionary format version " + std::to_string(found) +
                    " is not supported (expected " +
                    std::to_string(expected) + ")"),
        found_(found),
        expected_(expected) {}

  std::uint16_t found() const { return found_; }
  std::uint16_t expected() const { return expected_; }

 private:
  std::uint16_t found_;
  std::uint16_t expected_;
};

/// Dictionary file ends before the declared payload; carries the byte
/// offset at which data ran out.
class TruncationError : public FormatError {
 public:
  TruncationError(std::size_t offset, const std::string& what_was_expected)
      : FormatError("dictionary file truncated at byte " +
                    std::to_string(offset) + " while reading " +
                    what_was_expected),
        offset_(offset) {}

  std::size_t byte_offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace sparsekit
