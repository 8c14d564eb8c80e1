#include <doctest.h>

#include <set>
#include <unordered_set>

#include "imds/forms.hpp"
#include "imds/oracle.hpp"
#include "test_support.hpp"

using namespace imds;
using namespace imds::testing;

namespace {

const Field& gf16() {
  static const Field f(4, 0x13);
  return f;
}

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an imds::Error");
  return ErrorCode::invariant_violation;
}

// Brute force over every tuple with build_representative + the full MDS test.
std::vector<std::pair<RepTuple, Mat4>> brute_force_reps(const Field& f) {
  std::vector<std::pair<RepTuple, Mat4>> out;
  const auto u = f.units();
  for (Elem p : u)
    for (Elem q : u)
      for (Elem r : u)
        for (Elem c : u)
          for (Elem d : u) {
            const RepTuple t{p, q, r, c, d};
            const Mat4 R = build_representative(f, t);
            if (is_mds_full(f, R)) out.emplace_back(t, R);
          }
  return out;
}

}  // namespace

TEST_CASE("build_involutory reproduces the (1,1,a,a,a) representative") {
  const Field& f = gf16();
  auto a = [&](int k) { return f.alpha_pow(k); };
  const Mat2 P = make_mat2(a(4), a(1), a(1), a(4));
  const Mat2 C = make_mat2(a(5), a(1), a(1), a(1));
  const Mat4 R = build_involutory(f, P, C);
  CHECK(R == sample_rep_R(f));
  CHECK(R(0, 0) == a(12));
  CHECK(R(0, 3) == a(14));
}

TEST_CASE("build_involutory with identity blocks is involutory but not MDS") {
  const Field& f = gf16();
  const Mat2 I = identity<2>();
  const Mat4 M = build_involutory(f, I, I);
  CHECK(M == from_blocks(I, I, I, I) + identity<4>());
  CHECK(is_involutory(f, M));
  CHECK_FALSE(is_mds_full(f, M));
}

TEST_CASE("build_involutory rejects singular blocks") {
  const Field& f = gf16();
  const Mat2 S = make_mat2(kOne, kOne, kOne, kOne);
  CHECK(code_of([&] { build_involutory(f, S, identity<2>()); }) == ErrorCode::singular_block);
  CHECK(code_of([&] { build_involutory(f, identity<2>(), S); }) == ErrorCode::singular_block);
  CHECK(code_of([&] { build_representative(f, {kOne, kOne, kZero, kOne, kOne}); }) ==
        ErrorCode::singular_block);
}

TEST_CASE("build_involutory is always involutory") {
  for (unsigned m = kMinDegree; m <= kMaxDegree; ++m) {
    const Field f(m);
    Rng rng(500 + m);
    int ok = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      ok += is_involutory(f, build_involutory(f, rng.nonsingular2(f), rng.nonsingular2(f)));
    }
    CHECK(ok == 1000);
  }
}

TEST_CASE("build_representative") {
  const Field& f = gf16();
  const Elem a = f.generator();
  const RepTuple t{kOne, kOne, a, a, a};
  CHECK(build_representative(f, t) == sample_rep_R(f));
  CHECK(is_mds_viable(f, t));

  // d = 1 gives P = [[0, 1], [1, 0]] and can never be MDS
  const RepTuple d1{kOne, kOne, a, a, kOne};
  CHECK(rep_p_block(kOne) == make_mat2(kZero, kOne, kOne, kZero));
  const Mat4 R1 = build_representative(f, d1);
  CHECK(is_involutory(f, R1));
  CHECK_FALSE(is_mds_fast_involutory(f, R1));
  CHECK_FALSE(is_mds_viable(f, d1));

  // r = pq zeroes C's top-left entry
  const RepTuple rpq{a, a, f.mul(a, a), a, f.alpha_pow(3)};
  CHECK_FALSE(is_mds_viable(f, rpq));
  CHECK_FALSE(is_mds_fast_involutory(f, build_representative(f, rpq)));
}

TEST_CASE("build_representative is injective and row sums are 1, exhaustive at m = 3") {
  const Field f(3);
  std::unordered_set<oracle::MatKey, oracle::MatKeyHash> seen;
  const auto u = f.units();
  std::size_t n = 0;
  bool sums = true;
  for (Elem p : u)
    for (Elem q : u)
      for (Elem r : u)
        for (Elem c : u)
          for (Elem d : u) {
            const Mat4 R = build_representative(f, {p, q, r, c, d});
            seen.insert(oracle::key_of(R));
            sums = sums && row_col_sums_one(R);
            ++n;
          }
  CHECK(n == 16807);
  CHECK(seen.size() == 16807);
  CHECK(sums);
}

TEST_CASE("build_representative collision search for m = 4..8") {
  for (unsigned m = 4; m <= kMaxDegree; ++m) {
    const Field f(m);
    Rng rng(600 + m);
    std::set<std::pair<oracle::MatKey, std::array<std::uint8_t, 5>>> seen;
    std::set<oracle::MatKey> keys;
    for (int trial = 0; trial < 3000; ++trial) {
      const RepTuple t = rng.tuple(f);
      const auto k = oracle::key_of(build_representative(f, t));
      seen.insert({k, {t.p.bits, t.q.bits, t.r.bits, t.c.bits, t.d.bits}});
      keys.insert(k);
    }
    // same number of distinct matrices as distinct tuples drawn
    CHECK(keys.size() == seen.size());
  }
}

TEST_CASE("row and column sums of M follow those of P") {
  for (unsigned m = kMinDegree; m <= kMaxDegree; ++m) {
    const Field f(m);
    Rng rng(700 + m);
    for (int trial = 0; trial < 500; ++trial) {
      const Mat2 C = rng.nonsingular2(f);
      Mat2 P = rng.nonsingular2(f);
      CHECK(row_col_sums_one(build_involutory(f, P, C)) == row_col_sums_one(P));

      Elem d = rng.unit(f);
      if (d == kOne) continue;
      P = rep_p_block(d);
      CHECK(row_col_sums_one(build_involutory(f, P, C)));

      // rows sum to 1 but columns do not
      const Elem x = rng.any(f), y = rng.any(f);
      P = make_mat2(x, x + kOne, y, y + kOne);
      if (x + y == kOne || det(f, P).is_zero()) continue;
      CHECK_FALSE(row_col_sums_one(build_involutory(f, P, C)));
    }
  }
}

TEST_CASE("MDS members have nonzero P and C entries") {
  for (unsigned m = 4; m <= kMaxDegree; ++m) {
    const Field f(m);
    Rng rng(800 + m);
    for (int trial = 0; trial < 2000; ++trial) {
      const Mat2 P = rng.nonsingular2(f), C = rng.nonsingular2(f);
      if (!is_mds_fast_involutory(f, build_involutory(f, P, C))) continue;
      for (std::size_t i = 0; i < 4; ++i) {
        CHECK_FALSE(P.e[i].is_zero());
        CHECK_FALSE(C.e[i].is_zero());
      }
    }
  }
}

TEST_CASE("expand") {
  const Field& f = gf16();
  auto a = [&](int k) { return f.alpha_pow(k); };
  CHECK(expand(f, sample_rep_R(f), DiagTriple{}) == sample_rep_R(f));
  CHECK(expand(f, sample_M_rep(f), {a(9), a(13), a(12)}) == sample_M(f));
}

TEST_CASE("canonicalize the GF(16) sample matrix") {
  const Field& f = gf16();
  auto a = [&](int k) { return f.alpha_pow(k); };
  const Canonical c = canonicalize(f, sample_M(f), true);
  CHECK(c.D == DiagTriple{a(9), a(13), a(12)});
  CHECK(c.R == sample_M_rep(f));
  CHECK(expand(f, c.R, c.D) == sample_M(f));
  CHECK(build_representative(f, c.tuple) == c.R);
  // C1 = [[a^5, a^14], [a^6, a^5]] so c = a^5, p = a^9, q = a^1
  CHECK(c.tuple.c == a(5));
  CHECK(c.tuple.p == a(9));
  CHECK(c.tuple.q == a(1));
  // P1 = [[a^12, a^11], [a^11, a^12]]
  CHECK(c.tuple.d == a(11));
}

TEST_CASE("canonicalize fixes representatives and rejects bad input") {
  const Field& f = gf16();
  const Elem a = f.generator();
  const Canonical c = canonicalize(f, sample_rep_R(f), true);
  CHECK(c.D == DiagTriple{});
  CHECK(c.R == sample_rep_R(f));
  CHECK(c.tuple == RepTuple{kOne, kOne, a, a, a});

  CHECK(code_of([&] { canonicalize(f, identity<4>()); }) == ErrorCode::not_mds);
  CHECK(code_of([&] { canonicalize(f, build_representative(f, {kOne, kOne, a, a, kOne})); }) ==
        ErrorCode::not_mds);
  Mat4 broken = sample_M(f);
  broken(0, 0) = a;
  CHECK(code_of([&] { canonicalize(f, broken); }) == ErrorCode::not_involutory);
}

TEST_CASE("canonicalize and expand are inverse, exhaustive at m = 3") {
  const Field f(3);
  const auto reps = brute_force_reps(f);
  REQUIRE(reps.size() == 48);
  const auto u = f.units();
  std::size_t ok = 0, total = 0;
  for (const auto& [t, R] : reps) {
    for (Elem b1 : u)
      for (Elem b2 : u)
        for (Elem b3 : u) {
          const DiagTriple D{b1, b2, b3};
          const Mat4 M = expand(f, R, D);
          const Canonical c = canonicalize(f, M);
          ok += c.R == R && c.D == D && c.tuple == t && expand(f, c.R, c.D) == M;
          ++total;
        }
  }
  CHECK(total == 16464);
  CHECK(ok == total);
}

TEST_CASE("canonicalize and expand are inverse on random classes for m = 4..8") {
  for (unsigned m = 4; m <= kMaxDegree; ++m) {
    const Field f(m);
    Rng rng(900 + m);
    int tested = 0;
    while (tested < 500) {
      const RepTuple t = rng.tuple(f);
      const Mat4 R = build_representative(f, t);
      if (!is_mds_fast_involutory(f, R)) continue;
      const DiagTriple D = rng.diag(f);
      const Mat4 M = expand(f, R, D);
      const Canonical c = canonicalize(f, M, true);
      CHECK(c.R == R);
      CHECK(c.D == D);
      CHECK(c.tuple == t);
      ++tested;
    }
  }
}

TEST_CASE("literature forms convert to (P, C)") {
  const Field& f = gf16();
  auto a = [&](int k) { return f.alpha_pow(k); };
  const Mat2 P = make_mat2(a(4), a(1), a(1), a(4));
  const Mat2 C = make_mat2(a(5), a(1), a(1), a(1));
  const Mat2 A1 = mul(f, P, C) + identity<2>();
  const Mat2 A2 = mul(f, mul(f, P, C), P);

  const PCPair y = from_top_row_form(f, A1, A2);
  CHECK(y.P == P);
  CHECK(y.C == C);
  const PCPair s = from_left_column_form(f, A1, C);
  CHECK(s.P == P);
  CHECK(s.C == C);

  const Mat2 unipotent = make_mat2(kOne, kOne, kZero, kOne);  // I + A1 singular
  CHECK(code_of([&] { from_top_row_form(f, unipotent, A2); }) == ErrorCode::singular_block);
  CHECK(code_of([&] { from_left_column_form(f, unipotent, C); }) == ErrorCode::singular_block);

  // C = I can never give an MDS matrix
  const Mat2 P2 = make_mat2(a(2), a(1), a(3), a(5));
  const PCPair deg = from_left_column_form(f, P2 + identity<2>(), identity<2>());
  CHECK(deg.P == P2);
  CHECK(deg.C == identity<2>());
  CHECK_FALSE(is_mds_full(f, build_involutory(f, deg.P, deg.C)));
}

TEST_CASE("literature forms agree with direct block assembly") {
  const Field& f = gf16();
  Rng rng(42);
  int top_row = 0, left_column = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const Mat2 A1 = rng.nonsingular2(f), A2 = rng.nonsingular2(f);
    if (det(f, identity<2>() + A1).is_zero()) continue;
    const PCPair y = from_top_row_form(f, A1, A2);
    // C = A2^-1 (I + A1)^2 is nonsingular here, so P and C are both valid
    CHECK(build_involutory(f, y.P, y.C) == top_row_form_matrix(f, A1, A2));
    ++top_row;
    const PCPair s = from_left_column_form(f, A1, A2);
    CHECK(build_involutory(f, s.P, s.C) == left_column_form_matrix(f, A1, A2));
    ++left_column;
  }
  CHECK(top_row > 1000);
  CHECK(left_column > 1000);
}

TEST_CASE("nilpotent part") {
  const Field& f = gf16();
  CHECK(nilpotent_part(f, identity<4>()) == Mat4{});
  CHECK(rank(f, nilpotent_part(f, identity<4>())) == 0);
  const Mat4 N = nilpotent_part(f, sample_M(f));
  CHECK(mul(f, N, N) == Mat4{});
  CHECK(rank(f, N) == 2);
  Mat4 broken = sample_M(f);
  broken(3, 3) = kZero;
  CHECK(code_of([&] { nilpotent_part(f, broken); }) == ErrorCode::not_involutory);
}
