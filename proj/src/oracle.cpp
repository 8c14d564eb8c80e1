#include "imds/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <string>
#include <unordered_set>

namespace imds::oracle {
namespace {

void require_budget(const Field& f, bool allow_long) {
  if (f.degree() == 3 || (allow_long && f.degree() == 4)) return;
  throw Error(ErrorCode::budget_exceeded,
              "oracle does not run at m=" + std::to_string(f.degree()) +
                  (f.degree() == 4 ? " without the long-run flag" : ""));
}

// (a b; c d) as a 4x4 with everything else zero, placed at block (bi, bj).
void place(Mat4& out, const std::array<Elem, 4>& blk, std::size_t bi, std::size_t bj) {
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) out.e[(2 * bi + i) * 4 + 2 * bj + j] = blk[i * 2 + j];
  }
}

std::array<Elem, 4> prod2(const Field& f, const std::array<Elem, 4>& a,
                          const std::array<Elem, 4>& b) {
  std::array<Elem, 4> r{};
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      Elem acc;
      for (std::size_t k = 0; k < 2; ++k) acc = acc + f.mul(a[i * 2 + k], b[k * 2 + j]);
      r[i * 2 + j] = acc;
    }
  }
  return r;
}

}  // namespace

MatKey key_of(const Mat4& a) noexcept {
  MatKey k;
  for (std::size_t i = 0; i < 8; ++i) {
    k.lo |= static_cast<std::uint64_t>(a.e[i].bits) << (8 * i);
    k.hi |= static_cast<std::uint64_t>(a.e[i + 8].bits) << (8 * i);
  }
  return k;
}

Elem leibniz_det(const Field& f, const Elem* rows, std::size_t n) {
  std::array<std::size_t, 4> perm{};
  std::iota(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n), std::size_t{0});
  Elem acc;
  do {
    Elem term = kOne;
    for (std::size_t i = 0; i < n; ++i) term = f.mul(term, rows[i * n + perm[i]]);
    acc = acc + term;  // sign is irrelevant in characteristic 2
  } while (std::next_permutation(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n)));
  return acc;
}

Mat4 naive_product(const Field& f, const Mat4& a, const Mat4& b) {
  Mat4 r;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      Elem acc;
      for (std::size_t k = 0; k < 4; ++k) acc = acc + f.mul(a.e[i * 4 + k], b.e[k * 4 + j]);
      r.e[i * 4 + j] = acc;
    }
  }
  return r;
}

bool naive_is_involutory(const Field& f, const Mat4& a) {
  const Mat4 sq = naive_product(f, a, a);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (sq.e[i * 4 + j] != (i == j ? kOne : kZero)) return false;
    }
  }
  return true;
}

bool naive_is_mds(const Field& f, const Mat4& a) {
  for (unsigned k = 1; k <= 4; ++k) {
    for (unsigned rows = 1; rows < 16; ++rows) {
      if (static_cast<unsigned>(std::popcount(rows)) != k) continue;
      for (unsigned cols = 1; cols < 16; ++cols) {
        if (static_cast<unsigned>(std::popcount(cols)) != k) continue;
        std::array<Elem, 16> sub{};
        std::size_t n = 0;
        for (std::size_t i = 0; i < 4; ++i) {
          if (!((rows >> i) & 1u)) continue;
          for (std::size_t j = 0; j < 4; ++j) {
            if ((cols >> j) & 1u) sub[n++] = a.e[i * 4 + j];
          }
        }
        if (leibniz_det(f, sub.data(), k).is_zero()) return false;
      }
    }
  }
  return true;
}

std::vector<Mat2> nonsingular_mat2(const Field& f) {
  std::vector<Mat2> out;
  const unsigned q = f.order();
  for (unsigned a = 0; a < q; ++a) {
    for (unsigned b = 0; b < q; ++b) {
      for (unsigned c = 0; c < q; ++c) {
        for (unsigned d = 0; d < q; ++d) {
          const Elem ea(static_cast<std::uint8_t>(a)), eb(static_cast<std::uint8_t>(b)),
              ec(static_cast<std::uint8_t>(c)), ed(static_cast<std::uint8_t>(d));
          if (f.mul(ea, ed) == f.mul(eb, ec)) continue;
          Mat2 m;
          m.e = {ea, eb, ec, ed};
          out.push_back(m);
        }
      }
    }
  }
  return out;
}

std::uint64_t all_involutory_L4(const Field& f, const std::function<void(const Mat4&)>& sink,
                                bool allow_long) {
  require_budget(f, allow_long);
  const auto mats = nonsingular_mat2(f);
  std::uint64_t n = 0;
  for (const Mat2& P : mats) {
    for (const Mat2& C : mats) {
      std::array<Elem, 4> pc = prod2(f, P.e, C.e);
      std::array<Elem, 4> cp = prod2(f, C.e, P.e);
      const std::array<Elem, 4> pcp = prod2(f, pc, P.e);
      pc[0] = pc[0] + kOne;
      pc[3] = pc[3] + kOne;
      cp[0] = cp[0] + kOne;
      cp[3] = cp[3] + kOne;
      Mat4 M;
      place(M, pc, 0, 0);
      place(M, pcp, 0, 1);
      place(M, C.e, 1, 0);
      place(M, cp, 1, 1);
      sink(M);
      ++n;
    }
  }
  return n;
}

std::vector<Mat4> involutory_mds_set(const Field& f, bool allow_long) {
  std::vector<Mat4> out;
  all_involutory_L4(
      f,
      [&](const Mat4& M) {
        if (naive_is_mds(f, M)) out.push_back(M);
      },
      allow_long);
  return out;
}

ConjugationClasses classify_by_conjugation(const std::vector<Mat4>& matrices, const Field& f,
                                           bool allow_long) {
  require_budget(f, allow_long);
  std::unordered_set<MatKey, MatKeyHash> pending;
  for (const Mat4& M : matrices) pending.insert(key_of(M));

  const auto units = f.units();
  ConjugationClasses out;
  for (const Mat4& M : matrices) {
    if (!pending.contains(key_of(M))) continue;
    std::vector<Mat4> cls;
    std::unordered_set<MatKey, MatKeyHash> orbit;
    for (Elem b1 : units) {
      for (Elem b2 : units) {
        for (Elem b3 : units) {
          const std::array<Elem, 4> d{kOne, b1, b2, b3};
          Mat4 X;
          for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
              X.e[i * 4 + j] = f.div(f.mul(M.e[i * 4 + j], d[j]), d[i]);
            }
          }
          const MatKey k = key_of(X);
          if (!orbit.insert(k).second) continue;
          if (pending.erase(k) == 0) {
            throw Error(ErrorCode::invariant_violation,
                        "conjugation orbit leaves the input set");
          }
          cls.push_back(X);
        }
      }
    }
    out.classes.push_back(std::move(cls));
  }
  return out;
}

}  // namespace imds::oracle
