#pragma once

#include <cstdint>
#include <filesystem>

#include "imds/enumerator.hpp"

namespace imds {

inline constexpr std::uint8_t kCheckpointVersion = 1;
inline constexpr std::size_t kCheckpointSize = 64;

/// Little-endian layout, 64 bytes:
///
///   0  "IMDS"            20 range.begin u64
///   4  version u8        28 range.end u64
///   5  m u8              36 cursor u64
///   6  poly u16          44 rep_count u64
///   8  mode u8           52 candidates_tested u64
///   9  ordering u8       60 CRC-32 of bytes [0, 60) u32
///  10  reserved u16
///  12  parameter hash u64
struct CheckpointState {
  unsigned m = 0;
  std::uint16_t poly = 0;
  SearchMode mode = SearchMode::count;
  std::uint8_t ordering_version = kOrderingVersion;
  TupleRange range;
  std::uint64_t cursor = 0;
  std::uint64_t rep_count = 0;
  std::uint64_t candidates_tested = 0;
};

/// FNV-1a over (m, poly, ordering version, mode, range).
std::uint64_t parameter_hash(const CheckpointState& s) noexcept;

/// Atomic replace via a sibling temp file; an existing checkpoint survives a
/// failed write. Throws Error(checkpoint_io).
void checkpoint_save(const std::filesystem::path& path, const CheckpointState& state);

/// Throws Error(checkpoint_io) if unreadable, Error(corrupt_checkpoint) on bad
/// magic, size or CRC, Error(version_mismatch) on an unknown format version.
CheckpointState checkpoint_load(const std::filesystem::path& path);

/// State a job would be saved with at `cursor`.
CheckpointState checkpoint_state(const SearchJob& job, std::uint64_t cursor,
                                 std::uint64_t rep_count, std::uint64_t candidates_tested);

struct ResumePoint {
  /// Input job with range.begin moved to the saved cursor.
  SearchJob job;
  std::uint64_t rep_count = 0;
  std::uint64_t candidates_tested = 0;
  /// Tuples already covered before the cursor.
  std::uint64_t tuples_done = 0;
};

/// Throws Error(version_mismatch) if the file was written for a different
/// field, mode, ordering or range than `job`.
ResumePoint checkpoint_resume(const SearchJob& job, const std::filesystem::path& path);

}  // namespace imds
