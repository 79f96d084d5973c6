#pragma once

#include <cstdint>
#include <filesystem>

#include "sparsekit/pipeline.hpp"

namespace sparsekit {

inline constexpr char kDictionaryMagic[4] = {'S', 'P', 'K', 'D'};
inline constexpr std::uint16_t kDictionaryFormatVersion = 1;

/// Binary dictionary file, all integers little-endian:
///   magic "SPKD"
///   u16 format version
///   u32 width, height, x_n, y_n, n_train, n_classes
///   label table: n_classes x (u32 byte length + UTF-8 bytes), sorted
///   column labels: n_train x u32 index into the label table
///   per-patch matrices in patch-index order, each patch_len x n_train
///   IEEE-754 f64 values in column-major order
/// Round-trips are bit-exact.
void save_dictionary(const Dictionary& dict,
                     const std::filesystem::path& path);

/// Throws FormatError on a malformed file, VersionError on a version
/// mismatch, and TruncationError (with the byte offset) when the file ends
/// early.
Dictionary load_dictionary(const std::filesystem::path& path);

}  // namespace sparsekit
