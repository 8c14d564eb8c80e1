#include "imds/enumerator.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "imds/checkpoint.hpp"

namespace imds {

std::string_view to_string(SearchMode mode) noexcept {
  switch (mode) {
    case SearchMode::count: return "count";
    case SearchMode::stream_reps: return "reps";
    case SearchMode::stream_all: return "all";
  }
  return "unknown";
}

std::string to_decimal(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::uint64_t tuple_space_size(const Field& f) noexcept {
  const std::uint64_t u = f.unit_count();
  return u * u * u * u * (u - 1);
}

std::uint64_t pq_block_size(const Field& f) noexcept {
  const std::uint64_t u = f.unit_count();
  return u * u * (u - 1);
}

RepTuple tuple_at(const Field& f, std::uint64_t index) {
  if (index >= tuple_space_size(f)) {
    throw Error(ErrorCode::invalid_element, "tuple index " + std::to_string(index) + " out of range");
  }
  const std::uint64_t u = f.unit_count();
  const std::uint64_t ed = index % (u - 1) + 1;
  index /= u - 1;
  const std::uint64_t ec = index % u;
  index /= u;
  const std::uint64_t er = index % u;
  index /= u;
  const std::uint64_t eq = index % u;
  const std::uint64_t ep = index / u;
  auto a = [&](std::uint64_t e) { return f.alpha_pow(static_cast<long long>(e)); };
  return RepTuple{a(ep), a(eq), a(er), a(ec), a(ed)};
}

std::uint64_t tuple_index(const Field& f, const RepTuple& t) {
  if (!is_valid(t) || t.d == kOne) {
    throw Error(ErrorCode::invalid_element, "tuple lies outside the search space");
  }
  const std::uint64_t u = f.unit_count();
  std::uint64_t idx = f.log(t.p);
  idx = idx * u + f.log(t.q);
  idx = idx * u + f.log(t.r);
  idx = idx * u + f.log(t.c);
  return idx * (u - 1) + (f.log(t.d) - 1);
}

std::vector<TupleRange> partition(const Field& f, TupleRange range, unsigned parts) {
  std::vector<TupleRange> out;
  const std::uint64_t n = range.size();
  if (n == 0) return out;
  parts = std::max(1u, parts);
  const std::uint64_t block = pq_block_size(f);
  const bool aligned = n / parts >= block;
  std::uint64_t prev = range.begin;
  for (unsigned k = 1; k <= parts; ++k) {
    std::uint64_t cut = k == parts ? range.end
                                   : range.begin + static_cast<std::uint64_t>(
                                                       static_cast<unsigned __int128>(n) * k / parts);
    if (aligned && k != parts) cut = std::max(range.begin, cut / block * block);
    if (cut > prev) {
      out.push_back({prev, cut});
      prev = cut;
    }
  }
  return out;
}

SearchJob make_job(const Field& f, SearchMode mode, unsigned workers) {
  return SearchJob{.field = f,
                   .mode = mode,
                   .range = {0, tuple_space_size(f)},
                   .workers = std::max(1u, workers)};
}

namespace {

struct Hit {
  std::uint64_t index;
  Mat4 R;
};

struct PieceResult {
  std::uint64_t reps = 0;
  std::uint64_t candidates = 0;
  std::vector<Hit> hits;
};

// Index pairs of the six 2-subsets of {0,1,2,3}, ascending by bitmask.
constexpr std::uint8_t kPairs[6][2] = {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}};

/// Hot loop over a contiguous index range. Uses the field's product table and
/// P = I + dJ (J the all-ones 2x2), so PC = C + d JC, CP = C + d CJ and
/// PCP = PC + d (PC)J: every block is C plus d times row or column sums.
class Scanner {
 public:
  Scanner(const Field& f, bool keep_hits, bool verify)
      : f_(f), m_(f.degree()), mt_(f.mul_table().data()), keep_(keep_hits), verify_(verify) {
    for (Elem x : f.units()) alpha_.push_back(x.bits);
  }

  PieceResult scan(TupleRange range) const {
    PieceResult res;
    const std::uint64_t u = f_.unit_count();
    std::uint64_t idx = range.begin;
    std::uint64_t rest = idx;
    unsigned ed = static_cast<unsigned>(rest % (u - 1)) + 1;
    rest /= u - 1;
    unsigned ec = static_cast<unsigned>(rest % u);
    rest /= u;
    unsigned er = static_cast<unsigned>(rest % u);
    rest /= u;
    unsigned eq = static_cast<unsigned>(rest % u);
    unsigned ep = static_cast<unsigned>(rest / u);

    while (idx < range.end) {
      const std::uint64_t run = std::min<std::uint64_t>(u - ed, range.end - idx);
      const std::uint8_t p = alpha_[ep], q = alpha_[eq], r = alpha_[er], c = alpha_[ec];
      const std::uint8_t s = mul(p, q) ^ r;
      if (s != 0) {
        scan_d_run(res, idx, p, q, c, s, ed, static_cast<unsigned>(run));
      }
      idx += run;
      ed = 1;
      if (++ec == u) {
        ec = 0;
        if (++er == u) {
          er = 0;
          if (++eq == u) {
            eq = 0;
            ++ep;
          }
        }
      }
    }
    return res;
  }

 private:
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const noexcept {
    return mt_[(static_cast<unsigned>(a) << m_) | b];
  }

  void scan_d_run(PieceResult& res, std::uint64_t idx, std::uint8_t p, std::uint8_t q,
                  std::uint8_t c, std::uint8_t s, unsigned ed0,
                  unsigned run) const {
    // C = c [[pq + r, p], [q, 1]]; entries are units because s = pq + r != 0.
    const std::uint8_t c00 = mul(c, s), c01 = mul(c, p), c10 = mul(c, q), c11 = c;
    const std::uint8_t col0 = c00 ^ c10, col1 = c01 ^ c11;
    const std::uint8_t row0 = c00 ^ c01, row1 = c10 ^ c11;

    for (unsigned k = 0; k < run; ++k) {
      // P = [[d+1, d], [d, d+1]] has unit entries for d not in {0, 1}.
      const std::uint8_t d = alpha_[ed0 + k];
      const std::uint8_t pc00 = c00 ^ mul(d, col0), pc01 = c01 ^ mul(d, col1);
      const std::uint8_t pc10 = c10 ^ mul(d, col0), pc11 = c11 ^ mul(d, col1);
      const std::uint8_t cp00 = c00 ^ mul(d, row0), cp01 = c01 ^ mul(d, row0);
      const std::uint8_t cp10 = c10 ^ mul(d, row1), cp11 = c11 ^ mul(d, row1);
      const std::uint8_t u0 = mul(d, pc00 ^ pc01), u1 = mul(d, pc10 ^ pc11);

      const std::uint8_t R[16] = {
          static_cast<std::uint8_t>(pc00 ^ 1), pc01, static_cast<std::uint8_t>(pc00 ^ u0),
          static_cast<std::uint8_t>(pc01 ^ u0),
          pc10, static_cast<std::uint8_t>(pc11 ^ 1), static_cast<std::uint8_t>(pc10 ^ u1),
          static_cast<std::uint8_t>(pc11 ^ u1),
          c00, c01, static_cast<std::uint8_t>(cp00 ^ 1), cp01,
          c10, c11, cp10, static_cast<std::uint8_t>(cp11 ^ 1)};
      ++res.candidates;
      if (!passes(R)) continue;
      ++res.reps;
      if (keep_ || verify_) {
        Mat4 M;
        for (std::size_t i = 0; i < 16; ++i) M.e[i] = Elem(R[i]);
        if (verify_) check_hit(idx + k, M);
        if (keep_) res.hits.push_back({idx + k, M});
      }
    }
  }

  bool passes(const std::uint8_t (&R)[16]) const noexcept {
    // R[8], R[9], R[12], R[13] form C, whose entries are units already.
    if (!(R[0] && R[1] && R[2] && R[3] && R[4] && R[5] && R[6] && R[7] && R[10] && R[11] &&
          R[14] && R[15])) {
      return false;
    }
    for (const auto& rp : kPairs) {
      const unsigned a = rp[0] * 4u, b = rp[1] * 4u;
      for (const auto& cp : kPairs) {
        if (mul(R[a + cp[0]], R[b + cp[1]]) == mul(R[a + cp[1]], R[b + cp[0]])) return false;
      }
    }
    return true;
  }

  void check_hit(std::uint64_t index, const Mat4& M) const {
    const RepTuple t = tuple_at(f_, index);
    const Mat2 C = rep_c_block(f_, t);
    const Mat2 P = rep_p_block(t.d);
    bool ok = build_representative(f_, t) == M && is_involutory(f_, M) && is_mds_full(f_, M) &&
              row_col_sums_one(M) && rank(f_, M + identity<4>()) == 2;
    for (std::size_t i = 0; i < 4; ++i) ok = ok && !C.e[i].is_zero() && !P.e[i].is_zero();
    if (!ok) {
      throw Error(ErrorCode::invariant_violation,
                  "representative at index " + std::to_string(index) + " failed verification");
    }
  }

  const Field& f_;
  unsigned m_;
  const std::uint8_t* mt_;
  bool keep_;
  bool verify_;
  std::vector<std::uint8_t> alpha_;
};

std::vector<PieceResult> run_pieces(const Scanner& scanner, const std::vector<TupleRange>& pieces,
                                    unsigned workers) {
  std::vector<PieceResult> results(pieces.size());
  if (workers <= 1 || pieces.size() <= 1) {
    for (std::size_t i = 0; i < pieces.size(); ++i) results[i] = scanner.scan(pieces[i]);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  {
    std::vector<std::jthread> pool;
    const unsigned n = std::min<unsigned>(workers, static_cast<unsigned>(pieces.size()));
    for (unsigned w = 0; w < n; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < pieces.size(); i = next++) {
          try {
            results[i] = scanner.scan(pieces[i]);
          } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
            next = pieces.size();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace

EnumerationReport enumerate_representatives(const SearchJob& job, const RepSink& sink,
                                            const RunControl& control) {
  const auto start = std::chrono::steady_clock::now();
  const Field& f = job.field;
  const TupleRange full{0, tuple_space_size(f)};
  if (job.range.begin > job.range.end || job.range.end > full.end) {
    throw Error(ErrorCode::invalid_element, "search range exceeds the tuple space");
  }

  EnumerationReport rep;
  rep.m = f.degree();
  rep.poly = f.poly();
  std::uint64_t cursor = job.range.begin;
  if (control.resume && !control.checkpoint.empty() && std::filesystem::exists(control.checkpoint)) {
    const ResumePoint rp = checkpoint_resume(job, control.checkpoint);
    cursor = rp.job.range.begin;
    rep.rep_count = rp.rep_count;
    rep.candidates_tested = rp.candidates_tested;
    rep.tuples_scanned = rp.tuples_done;
  }

  const bool streaming = job.mode != SearchMode::count;
  if (streaming && !sink) {
    throw Error(ErrorCode::invariant_violation, "stream mode requires a sink");
  }
  const bool checkpointing = !control.checkpoint.empty();
  const std::uint64_t interval = std::max<std::uint64_t>(1, job.checkpoint_interval);
  // Streaming buffers hits per segment; keep that bounded.
  const std::uint64_t segment = streaming ? std::min<std::uint64_t>(interval, 1u << 20) : interval;
  const unsigned workers = std::max(1u, job.workers);
  const Scanner scanner(f, streaming, job.verify);

  auto save = [&] {
    checkpoint_save(control.checkpoint,
                    checkpoint_state(job, cursor, rep.rep_count, rep.candidates_tested));
  };

  std::uint64_t scanned_here = 0;
  std::uint64_t since_save = 0;
  while (cursor < job.range.end) {
    const TupleRange seg{cursor, std::min(job.range.end, cursor + segment)};
    const auto pieces = partition(f, seg, streaming ? workers * 4 : workers);
    const auto results = run_pieces(scanner, pieces, workers);
    for (const auto& r : results) {
      if (streaming) {
        for (const Hit& h : r.hits) sink(tuple_at(f, h.index), h.R);
      }
      rep.rep_count += r.reps;
      rep.candidates_tested += r.candidates;
    }
    rep.tuples_scanned += seg.size();
    scanned_here += seg.size();
    since_save += seg.size();
    cursor = seg.end;

    const bool stop = (control.cancel && control.cancel->load()) ||
                      (control.halt_after != 0 && scanned_here >= control.halt_after);
    if (checkpointing && (since_save >= interval || stop || cursor == job.range.end)) {
      save();
      since_save = 0;
    }
    if (control.progress) {
      rep.cursor = cursor;
      control.progress(rep);
    }
    if (stop) break;
  }

  rep.cursor = cursor;
  rep.completed = cursor == job.range.end;
  const unsigned __int128 u = f.unit_count();
  rep.total_count = static_cast<unsigned __int128>(rep.rep_count) * u * u * u;
  rep.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::uint64_t expand_class(const Field& f, const Mat4& R,
                           const std::function<void(const DiagTriple&, const Mat4&)>& sink) {
  const auto units = f.units();
  std::uint64_t n = 0;
  for (Elem b1 : units) {
    for (Elem b2 : units) {
      for (Elem b3 : units) {
        const DiagTriple D{b1, b2, b3};
        sink(D, expand(f, R, D));
        ++n;
      }
    }
  }
  return n;
}

std::vector<EnumerationReport> count_table(const std::vector<unsigned>& degrees,
                                           const std::map<unsigned, std::uint16_t>& polys,
                                           unsigned workers) {
  std::vector<EnumerationReport> out;
  for (unsigned m : degrees) {
    const auto it = polys.find(m);
    const Field f(m, it == polys.end() ? std::nullopt : std::optional<std::uint16_t>(it->second));
    out.push_back(enumerate_representatives(make_job(f, SearchMode::count, workers)));
  }
  return out;
}

}  // namespace imds
