#include "imds/matrix.hpp"

#include <bit>
#include <utility>

namespace imds {
namespace {

Elem det3(const Field& f, const Mat4& a, const std::array<std::size_t, 3>& r,
          const std::array<std::size_t, 3>& c) noexcept {
  auto m = [&](std::size_t i, std::size_t j) { return a(r[i], c[j]); };
  auto d2 = [&](std::size_t i0, std::size_t i1, std::size_t j0, std::size_t j1) {
    return f.mul(m(i0, j0), m(i1, j1)) + f.mul(m(i0, j1), m(i1, j0));
  };
  return f.mul(m(0, 0), d2(1, 2, 1, 2)) + f.mul(m(0, 1), d2(1, 2, 0, 2)) +
         f.mul(m(0, 2), d2(1, 2, 0, 1));
}

std::array<std::size_t, 3> members3(unsigned mask) noexcept {
  std::array<std::size_t, 3> out{};
  std::size_t n = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    if ((mask >> i) & 1u) out[n++] = i;
  }
  return out;
}

}  // namespace

Elem det(const Field& f, const Mat2& a) noexcept {
  return f.mul(a(0, 0), a(1, 1)) + f.mul(a(0, 1), a(1, 0));
}

Elem det(const Field& f, const Mat4& a) noexcept {
  // Cofactor expansion along row 0; signs vanish in characteristic 2.
  Elem acc;
  for (std::size_t j = 0; j < 4; ++j) {
    if (a(0, j).is_zero()) continue;
    std::array<std::size_t, 3> cols{};
    std::size_t n = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      if (k != j) cols[n++] = k;
    }
    acc += f.mul(a(0, j), det3(f, a, {1, 2, 3}, cols));
  }
  return acc;
}

Mat2 inverse(const Field& f, const Mat2& a) {
  const Elem d = det(f, a);
  if (d.is_zero()) throw Error(ErrorCode::singular_matrix, "2x2 matrix is singular");
  const Elem s = f.inv(d);
  return make_mat2(f.mul(s, a(1, 1)), f.mul(s, a(0, 1)), f.mul(s, a(1, 0)), f.mul(s, a(0, 0)));
}

Mat4 inverse(const Field& f, const Mat4& a) {
  Mat4 w = a;
  Mat4 r = identity<4>();
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t piv = col;
    while (piv < 4 && w(piv, col).is_zero()) ++piv;
    if (piv == 4) throw Error(ErrorCode::singular_matrix, "4x4 matrix is singular");
    if (piv != col) {
      for (std::size_t j = 0; j < 4; ++j) {
        std::swap(w(piv, j), w(col, j));
        std::swap(r(piv, j), r(col, j));
      }
    }
    const Elem s = f.inv(w(col, col));
    for (std::size_t j = 0; j < 4; ++j) {
      w(col, j) = f.mul(s, w(col, j));
      r(col, j) = f.mul(s, r(col, j));
    }
    for (std::size_t i = 0; i < 4; ++i) {
      if (i == col || w(i, col).is_zero()) continue;
      const Elem k = w(i, col);
      for (std::size_t j = 0; j < 4; ++j) {
        w(i, j) += f.mul(k, w(col, j));
        r(i, j) += f.mul(k, r(col, j));
      }
    }
  }
  return r;
}

std::vector<unsigned> subsets_of_size(unsigned k) {
  std::vector<unsigned> out;
  for (unsigned mask = 1; mask < 16; ++mask) {
    if (static_cast<unsigned>(std::popcount(mask)) == k) out.push_back(mask);
  }
  return out;
}

std::vector<Elem> minors(const Field& f, const Mat4& a, unsigned k) {
  std::vector<Elem> out;
  const auto subsets = subsets_of_size(k);
  out.reserve(subsets.size() * subsets.size());
  for (unsigned rows : subsets) {
    for (unsigned cols : subsets) {
      switch (k) {
        case 1:
          out.push_back(a(std::countr_zero(rows), std::countr_zero(cols)));
          break;
        case 2: {
          const unsigned r0 = std::countr_zero(rows), r1 = 31 - std::countl_zero(rows);
          const unsigned c0 = std::countr_zero(cols), c1 = 31 - std::countl_zero(cols);
          out.push_back(f.mul(a(r0, c0), a(r1, c1)) + f.mul(a(r0, c1), a(r1, c0)));
          break;
        }
        case 3:
          out.push_back(det3(f, a, members3(rows), members3(cols)));
          break;
        case 4:
          out.push_back(det(f, a));
          break;
        default:
          break;
      }
    }
  }
  return out;
}

bool is_involutory(const Field& f, const Mat4& a) noexcept {
  return mul(f, a, a) == identity<4>();
}

namespace {

bool entries_and_2x2_nonzero(const Field& f, const Mat4& a) noexcept {
  for (Elem x : a.e) {
    if (x.is_zero()) return false;
  }
  static constexpr std::array<std::array<std::size_t, 2>, 6> pairs{
      {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}}};
  // pairs is ascending by bitmask: 0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100
  for (const auto& r : pairs) {
    for (const auto& c : pairs) {
      if (f.mul(a(r[0], c[0]), a(r[1], c[1])) == f.mul(a(r[0], c[1]), a(r[1], c[0]))) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

bool is_mds_full(const Field& f, const Mat4& a) noexcept {
  if (!entries_and_2x2_nonzero(f, a)) return false;
  for (unsigned rows : subsets_of_size(3)) {
    for (unsigned cols : subsets_of_size(3)) {
      if (det3(f, a, members3(rows), members3(cols)).is_zero()) return false;
    }
  }
  return !det(f, a).is_zero();
}

bool is_mds_fast_involutory(const Field& f, const Mat4& a, bool verify) {
  if (verify && !is_involutory(f, a)) {
    throw Error(ErrorCode::not_involutory, "fast MDS check requires an involutory matrix");
  }
  return entries_and_2x2_nonzero(f, a);
}

unsigned rank(const Field& f, const Mat4& a) noexcept {
  Mat4 w = a;
  unsigned r = 0;
  for (std::size_t col = 0; col < 4 && r < 4; ++col) {
    std::size_t piv = r;
    while (piv < 4 && w(piv, col).is_zero()) ++piv;
    if (piv == 4) continue;
    for (std::size_t j = 0; j < 4; ++j) std::swap(w(piv, j), w(r, j));
    // fraction-free: row_i <- pivot * row_i + a_i,col * row_r
    const Elem p = w(r, col);
    for (std::size_t i = r + 1; i < 4; ++i) {
      const Elem k = w(i, col);
      if (k.is_zero()) continue;
      for (std::size_t j = col; j < 4; ++j) w(i, j) = f.mul(p, w(i, j)) + f.mul(k, w(r, j));
    }
    ++r;
  }
  return r;
}

bool row_col_sums_one(const Mat4& a) noexcept {
  for (std::size_t i = 0; i < 4; ++i) {
    Elem row, col;
    for (std::size_t j = 0; j < 4; ++j) {
      row += a(i, j);
      col += a(j, i);
    }
    if (row != kOne || col != kOne) return false;
  }
  return true;
}

bool row_col_sums_one(const Mat2& a) noexcept {
  return a(0, 0) + a(0, 1) == kOne && a(1, 0) + a(1, 1) == kOne &&
         a(0, 0) + a(1, 0) == kOne && a(0, 1) + a(1, 1) == kOne;
}

Mat2 block(const Mat4& a, std::size_t bi, std::size_t bj) noexcept {
  const std::size_t r = 2 * bi, c = 2 * bj;
  return make_mat2(a(r, c), a(r, c + 1), a(r + 1, c), a(r + 1, c + 1));
}

Mat4 from_blocks(const Mat2& a, const Mat2& b, const Mat2& c, const Mat2& d) noexcept {
  Mat4 r;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      r(i, j) = a(i, j);
      r(i, j + 2) = b(i, j);
      r(i + 2, j) = c(i, j);
      r(i + 2, j + 2) = d(i, j);
    }
  }
  return r;
}

}  // namespace imds
