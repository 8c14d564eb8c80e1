#include <doctest.h>

#include <algorithm>
#include <unordered_set>

#include "imds/enumerator.hpp"
#include "imds/oracle.hpp"
#include "test_support.hpp"

using namespace imds;
using namespace imds::testing;

namespace {

std::vector<std::pair<std::uint64_t, Mat4>> stream(const SearchJob& job) {
  std::vector<std::pair<std::uint64_t, Mat4>> out;
  enumerate_representatives(job, [&](const RepTuple& t, const Mat4& R) {
    out.emplace_back(tuple_index(job.field, t), R);
  });
  return out;
}

}  // namespace

TEST_CASE("tuple index space") {
  const Field f3(3);
  CHECK(tuple_space_size(f3) == 14406);
  CHECK(pq_block_size(f3) == 49 * 6);
  CHECK(tuple_space_size(Field(4)) == 15ull * 15 * 15 * 15 * 14);
  CHECK(tuple_space_size(Field(8)) == 255ull * 255 * 255 * 255 * 254);

  const Elem a = f3.generator();
  CHECK(tuple_at(f3, 0) == RepTuple{kOne, kOne, kOne, kOne, a});
  CHECK(tuple_at(f3, 1) == RepTuple{kOne, kOne, kOne, kOne, f3.mul(a, a)});
  CHECK(tuple_at(f3, 6) == RepTuple{kOne, kOne, kOne, a, a});
  CHECK(tuple_at(f3, 14405) == RepTuple{f3.alpha_pow(6), f3.alpha_pow(6), f3.alpha_pow(6),
                                        f3.alpha_pow(6), f3.alpha_pow(6)});
  CHECK_THROWS_AS(tuple_at(f3, 14406), Error);
  CHECK_THROWS_AS(tuple_index(f3, {kOne, kOne, kOne, kOne, kOne}), Error);

  for (std::uint64_t i = 0; i < tuple_space_size(f3); ++i) {
    if (tuple_index(f3, tuple_at(f3, i)) != i) FAIL("round trip failed at ", i);
  }
  const Field f8(8);
  Rng rng(3);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::uint64_t i = (static_cast<std::uint64_t>(rng.pick(1u << 20)) << 20 | rng.pick(1u << 20)) %
                            tuple_space_size(f8);
    if (tuple_index(f8, tuple_at(f8, i)) != i) FAIL("round trip failed at ", i);
  }
}

TEST_CASE("partition covers the range with disjoint pieces") {
  const Field f(4);
  const std::uint64_t n = tuple_space_size(f);
  for (unsigned parts : {1u, 2u, 3u, 7u, 8u, 64u, 1000u}) {
    for (TupleRange r : {TupleRange{0, n}, TupleRange{17, 5000}, TupleRange{n - 3, n},
                         TupleRange{12345, 12345}}) {
      const auto pieces = partition(f, r, parts);
      std::uint64_t at = r.begin;
      for (const auto& p : pieces) {
        CHECK(p.begin == at);
        CHECK(p.size() > 0);
        at = p.end;
      }
      CHECK(at == (r.size() ? r.end : r.begin));
      CHECK(pieces.size() <= parts);
    }
  }
  // wide ranges cut on (p, q) block boundaries
  for (const auto& p : partition(f, {0, n}, 8)) CHECK(p.begin % pq_block_size(f) == 0);
}

TEST_CASE("representative counts for m = 3 and m = 4") {
  const auto r3 = enumerate_representatives(make_job(Field(3)));
  CHECK(r3.rep_count == 48);
  CHECK(r3.total_count == 48 * 343);
  CHECK(r3.completed);
  CHECK(r3.tuples_scanned == 14406);
  // one r per (p, q, c, d) equals pq and is skipped
  CHECK(r3.candidates_tested == 14406 - 7 * 7 * 7 * 6);

  const auto r4 = enumerate_representatives(make_job(Field(4, 0x13)));
  CHECK(r4.rep_count == 71856);
  CHECK(to_decimal(r4.total_count) == std::to_string(71856ull * 3375));
}

TEST_CASE("stream output matches a brute-force scan at m = 3") {
  const Field f(3);
  SearchJob job = make_job(f, SearchMode::stream_reps);
  job.verify = true;
  const auto hits = stream(job);
  REQUIRE(hits.size() == 48);
  CHECK(std::is_sorted(hits.begin(), hits.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; }));

  std::vector<std::pair<std::uint64_t, Mat4>> brute;
  const auto u = f.units();
  for (Elem p : u)
    for (Elem q : u)
      for (Elem r : u)
        for (Elem c : u)
          for (Elem d : u) {
            const RepTuple t{p, q, r, c, d};
            const Mat4 R = build_representative(f, t);
            if (!oracle::naive_is_mds(f, R)) continue;
            // no hit outside the pruned space
            CHECK(d != kOne);
            CHECK(r != f.mul(p, q));
            brute.emplace_back(tuple_index(f, t), R);
          }
  std::sort(brute.begin(), brute.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  CHECK(hits == brute);
}

TEST_CASE("counts do not depend on workers or partitioning") {
  for (unsigned m : {3u, 4u}) {
    const Field f(m);
    const auto base = enumerate_representatives(make_job(f)).rep_count;
    for (unsigned w : {2u, 3u, 8u}) {
      CHECK(enumerate_representatives(make_job(f, SearchMode::count, w)).rep_count == base);
    }
    std::uint64_t split = 0;
    for (const auto& piece : partition(f, {0, tuple_space_size(f)}, 5)) {
      SearchJob job = make_job(f);
      job.range = piece;
      split += enumerate_representatives(job).rep_count;
    }
    CHECK(split == base);
    // small segments exercise segment boundaries inside (p, q) blocks
    SearchJob job = make_job(f, SearchMode::count, 2);
    job.checkpoint_interval = 997;
    CHECK(enumerate_representatives(job).rep_count == base);
  }
}

TEST_CASE("two workers stream the same representatives in the same order") {
  const Field f(3);
  SearchJob one = make_job(f, SearchMode::stream_reps, 1);
  SearchJob two = make_job(f, SearchMode::stream_reps, 2);
  two.checkpoint_interval = 1000;
  CHECK(stream(one) == stream(two));

  const Field f4(4);
  SearchJob a = make_job(f4, SearchMode::stream_reps, 1);
  SearchJob b = make_job(f4, SearchMode::stream_reps, 4);
  b.checkpoint_interval = 50000;
  CHECK(stream(a) == stream(b));
}

TEST_CASE("expand_class") {
  const Field f(3);
  std::unordered_set<oracle::MatKey, oracle::MatKeyHash> all;
  std::uint64_t emitted = 0;
  enumerate_representatives(make_job(f, SearchMode::stream_reps), [&](const RepTuple&, const Mat4& R) {
    std::unordered_set<oracle::MatKey, oracle::MatKeyHash> cls;
    bool first = true;
    const auto n = expand_class(f, R, [&](const DiagTriple& D, const Mat4& M) {
      if (first) CHECK(D == DiagTriple{});
      first = false;
      CHECK(is_involutory(f, M));
      CHECK(is_mds_full(f, M));
      cls.insert(oracle::key_of(M));
      all.insert(oracle::key_of(M));
      ++emitted;
    });
    CHECK(n == 343);
    CHECK(cls.size() == 343);
  });
  CHECK(emitted == 16464);
  CHECK(all.size() == 16464);

  const Field f4(4);
  std::unordered_set<oracle::MatKey, oracle::MatKeyHash> cls4;
  CHECK(expand_class(f4, sample_rep_R(f4), [&](const DiagTriple&, const Mat4& M) {
          cls4.insert(oracle::key_of(M));
        }) == 3375);
  CHECK(cls4.size() == 3375);
}

TEST_CASE("count_table and representation independence at m = 4") {
  const auto reports = count_table({3, 4}, {{4, 0x19}});
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].rep_count == 48);
  CHECK(reports[1].poly == 0x19);
  CHECK(reports[1].rep_count == 71856);
}

TEST_CASE("sink failures propagate") {
  SearchJob job = make_job(Field(3), SearchMode::stream_reps);
  int seen = 0;
  CHECK_THROWS_WITH(enumerate_representatives(job,
                                              [&](const RepTuple&, const Mat4&) {
                                                if (++seen == 5) throw std::runtime_error("sink full");
                                              }),
                    "sink full");
  CHECK_THROWS_AS(enumerate_representatives(job), Error);  // stream mode without a sink
}

TEST_CASE("halt and progress reporting") {
  const Field f(4);
  SearchJob job = make_job(f);
  job.checkpoint_interval = 100000;
  int calls = 0;
  RunControl ctl;
  ctl.halt_after = 250000;
  ctl.progress = [&](const EnumerationReport&) { ++calls; };
  const auto r = enumerate_representatives(job, {}, ctl);
  CHECK_FALSE(r.completed);
  CHECK(r.cursor == 300000);
  CHECK(calls == 3);

  std::atomic<bool> cancel{true};
  RunControl stop;
  stop.cancel = &cancel;
  const auto s = enumerate_representatives(job, {}, stop);
  CHECK(s.cursor == 100000);
  CHECK_FALSE(s.completed);
}

TEST_CASE("bad ranges are rejected") {
  SearchJob job = make_job(Field(3));
  job.range = {0, 14407};
  CHECK_THROWS_AS(enumerate_representatives(job), Error);
}
