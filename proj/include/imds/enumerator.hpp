#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "imds/forms.hpp"

namespace imds {

enum class SearchMode : std::uint8_t { count = 0, stream_reps = 1, stream_all = 2 };

std::string_view to_string(SearchMode mode) noexcept;

/// Bumped whenever the tuple linearisation changes; stored in checkpoints.
inline constexpr std::uint8_t kOrderingVersion = 1;

/// Half-open range [begin, end) of linearised tuple indices.
struct TupleRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;

  std::uint64_t size() const noexcept { return end > begin ? end - begin : 0; }
  friend constexpr bool operator==(const TupleRange&, const TupleRange&) = default;
};

// Tuple index space.
//
// Tuples (p, q, r, c, d) = (a^ep, a^eq, a^er, a^ec, a^ed) are ordered
// lexicographically by exponent with ep, eq, er, ec in [0, 2^m - 1) and
// ed in [1, 2^m - 1) (d = 1 is dropped up front), so
//   index = (((ep U + eq) U + er) U + ec) (U - 1) + (ed - 1),   U = 2^m - 1.

/// (2^m - 1)^4 (2^m - 2).
std::uint64_t tuple_space_size(const Field& f) noexcept;
RepTuple tuple_at(const Field& f, std::uint64_t index);
/// Throws Error(invalid_element) for tuples outside the space (zero entries or d = 1).
std::uint64_t tuple_index(const Field& f, const RepTuple& t);
/// Tuples sharing one leading (p, q) pair: (2^m - 1)^2 (2^m - 2).
std::uint64_t pq_block_size(const Field& f) noexcept;

/// Splits `range` into at most `parts` disjoint, contiguous, non-empty pieces
/// covering it. Cut points fall on (p, q) block boundaries when the range is
/// wide enough.
std::vector<TupleRange> partition(const Field& f, TupleRange range, unsigned parts);

struct SearchJob {
  Field field;
  SearchMode mode = SearchMode::count;
  TupleRange range;
  /// Tuples between checkpoint writes.
  std::uint64_t checkpoint_interval = std::uint64_t{1} << 30;
  unsigned workers = 1;
  /// Re-check every hit with the full 69-minor test and the structural invariants.
  bool verify = false;
};

/// Job over the whole tuple space of `f`.
SearchJob make_job(const Field& f, SearchMode mode = SearchMode::count, unsigned workers = 1);

struct EnumerationReport {
  unsigned m = 0;
  std::uint16_t poly = 0;
  std::uint64_t rep_count = 0;
  /// rep_count * (2^m - 1)^3.
  unsigned __int128 total_count = 0;
  double elapsed = 0.0;
  /// Tuples whose representative was built and MDS-tested (r != pq).
  std::uint64_t candidates_tested = 0;
  /// Tuples visited, including the r = pq ones skipped before the test.
  std::uint64_t tuples_scanned = 0;
  /// First index not yet processed; equals range.end when completed.
  std::uint64_t cursor = 0;
  bool completed = false;
};

std::string to_decimal(unsigned __int128 v);

/// Receives representatives in increasing tuple-index order. Exceptions thrown
/// by the sink abort the run and propagate to the caller.
using RepSink = std::function<void(const RepTuple&, const Mat4&)>;

struct RunControl {
  /// Checkpoint file; empty disables checkpointing.
  std::filesystem::path checkpoint;
  /// Continue from `checkpoint` if it exists.
  bool resume = false;
  /// Polled between segments; a set flag stops the run with a resumable state.
  const std::atomic<bool>* cancel = nullptr;
  /// Stop after the first segment boundary at or past this many tuples scanned
  /// in this invocation (0 = no limit).
  std::uint64_t halt_after = 0;
  std::function<void(const EnumerationReport&)> progress;
};

/// Exhaustive search for involutory MDS class representatives over job.range.
/// Tuples with r = pq are skipped without testing; the rest are tested with the
/// entries-and-2x2-minors check, which is exact for these always-involutory
/// matrices.
EnumerationReport enumerate_representatives(const SearchJob& job, const RepSink& sink = {},
                                            const RunControl& control = {});

/// Emits D^-1 R D for every D = Diag(1, b1, b2, b3), b1 outermost, each b_i
/// running over the units in canonical order. Returns (2^m - 1)^3.
std::uint64_t expand_class(const Field& f, const Mat4& R,
                           const std::function<void(const DiagTriple&, const Mat4&)>& sink);

/// Full count-mode runs for each degree in `degrees`. `polys` overrides the
/// default modulus per degree.
std::vector<EnumerationReport> count_table(const std::vector<unsigned>& degrees,
                                           const std::map<unsigned, std::uint16_t>& polys = {},
                                           unsigned workers = 1);

}  // namespace imds
