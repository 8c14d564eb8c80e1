#include "imds/checkpoint.hpp"

#include <zlib.h>

#include <array>
#include <fstream>
#include <string>
#include <system_error>

namespace imds {
namespace {

using Buffer = std::array<unsigned char, kCheckpointSize>;

void put(Buffer& b, std::size_t at, std::uint64_t v, std::size_t width) {
  for (std::size_t i = 0; i < width; ++i) b[at + i] = static_cast<unsigned char>(v >> (8 * i));
}

std::uint64_t get(const Buffer& b, std::size_t at, std::size_t width) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i) v |= static_cast<std::uint64_t>(b[at + i]) << (8 * i);
  return v;
}

std::uint32_t crc_of(const Buffer& b) {
  return static_cast<std::uint32_t>(crc32(crc32(0L, Z_NULL, 0), b.data(), 60));
}

}  // namespace

std::uint64_t parameter_hash(const CheckpointState& s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::uint64_t v, std::size_t width) {
    for (std::size_t i = 0; i < width; ++i) {
      h ^= (v >> (8 * i)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  };
  mix(s.m, 1);
  mix(s.poly, 2);
  mix(s.ordering_version, 1);
  mix(static_cast<std::uint8_t>(s.mode), 1);
  mix(s.range.begin, 8);
  mix(s.range.end, 8);
  return h;
}

void checkpoint_save(const std::filesystem::path& path, const CheckpointState& s) {
  Buffer b{};
  b[0] = 'I';
  b[1] = 'M';
  b[2] = 'D';
  b[3] = 'S';
  b[4] = kCheckpointVersion;
  b[5] = static_cast<unsigned char>(s.m);
  put(b, 6, s.poly, 2);
  b[8] = static_cast<unsigned char>(s.mode);
  b[9] = s.ordering_version;
  put(b, 12, parameter_hash(s), 8);
  put(b, 20, s.range.begin, 8);
  put(b, 28, s.range.end, 8);
  put(b, 36, s.cursor, 8);
  put(b, 44, s.rep_count, 8);
  put(b, 52, s.candidates_tested, 8);
  put(b, 60, crc_of(b), 4);

  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::checkpoint_io, "cannot write checkpoint " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw Error(ErrorCode::checkpoint_io,
                "cannot replace checkpoint " + path.string() + ": " + ec.message());
  }
}

CheckpointState checkpoint_load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::checkpoint_io, "cannot open checkpoint " + path.string());
  Buffer b{};
  in.read(reinterpret_cast<char*>(b.data()), static_cast<std::streamsize>(b.size()));
  if (in.gcount() != static_cast<std::streamsize>(b.size()) || in.peek() != EOF) {
    throw Error(ErrorCode::corrupt_checkpoint, "checkpoint " + path.string() + " has wrong size");
  }
  if (b[0] != 'I' || b[1] != 'M' || b[2] != 'D' || b[3] != 'S') {
    throw Error(ErrorCode::corrupt_checkpoint, "checkpoint " + path.string() + " has bad magic");
  }
  if (get(b, 60, 4) != crc_of(b)) {
    throw Error(ErrorCode::corrupt_checkpoint, "checkpoint " + path.string() + " fails CRC");
  }
  if (b[4] != kCheckpointVersion) {
    throw Error(ErrorCode::version_mismatch,
                "checkpoint format version " + std::to_string(b[4]) + " is not supported");
  }
  CheckpointState s;
  s.m = b[5];
  s.poly = static_cast<std::uint16_t>(get(b, 6, 2));
  s.mode = static_cast<SearchMode>(b[8]);
  s.ordering_version = b[9];
  s.range = {get(b, 20, 8), get(b, 28, 8)};
  s.cursor = get(b, 36, 8);
  s.rep_count = get(b, 44, 8);
  s.candidates_tested = get(b, 52, 8);
  if (get(b, 12, 8) != parameter_hash(s) || s.cursor < s.range.begin || s.cursor > s.range.end) {
    throw Error(ErrorCode::corrupt_checkpoint, "checkpoint " + path.string() + " is inconsistent");
  }
  return s;
}

CheckpointState checkpoint_state(const SearchJob& job, std::uint64_t cursor,
                                 std::uint64_t rep_count, std::uint64_t candidates_tested) {
  CheckpointState s;
  s.m = job.field.degree();
  s.poly = job.field.poly();
  s.mode = job.mode;
  s.ordering_version = kOrderingVersion;
  s.range = job.range;
  s.cursor = cursor;
  s.rep_count = rep_count;
  s.candidates_tested = candidates_tested;
  return s;
}

ResumePoint checkpoint_resume(const SearchJob& job, const std::filesystem::path& path) {
  const CheckpointState saved = checkpoint_load(path);
  const CheckpointState expected = checkpoint_state(job, saved.cursor, 0, 0);
  if (parameter_hash(saved) != parameter_hash(expected) || saved.m != expected.m ||
      saved.poly != expected.poly || saved.mode != expected.mode ||
      saved.ordering_version != expected.ordering_version || !(saved.range == expected.range)) {
    throw Error(ErrorCode::version_mismatch,
                "checkpoint " + path.string() + " was written for different search parameters");
  }
  ResumePoint rp{.job = job};
  rp.job.range.begin = saved.cursor;
  rp.rep_count = saved.rep_count;
  rp.candidates_tested = saved.candidates_tested;
  rp.tuples_done = saved.cursor - job.range.begin;
  return rp;
}

}  // namespace imds
