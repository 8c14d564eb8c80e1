#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "imds/field.hpp"

namespace imds {

/// Dense N x N matrix over GF(2^m), row-major. Entries are plain Elem values,
/// so a matrix does not remember its field: mixing fields is a caller bug.
template <std::size_t N>
struct Mat {
  std::array<Elem, N * N> e{};

  static constexpr std::size_t size = N;

  constexpr Elem& operator()(std::size_t i, std::size_t j) noexcept { return e[i * N + j]; }
  constexpr Elem operator()(std::size_t i, std::size_t j) const noexcept { return e[i * N + j]; }

  friend constexpr Mat operator+(const Mat& a, const Mat& b) noexcept {
    Mat r;
    for (std::size_t k = 0; k < N * N; ++k) r.e[k] = a.e[k] + b.e[k];
    return r;
  }
  // Characteristic 2: subtraction is addition.
  friend constexpr Mat operator-(const Mat& a, const Mat& b) noexcept { return a + b; }

  friend constexpr bool operator==(const Mat&, const Mat&) = default;
};

using Mat2 = Mat<2>;
using Mat4 = Mat<4>;

template <std::size_t N>
constexpr Mat<N> identity() noexcept {
  Mat<N> r;
  for (std::size_t i = 0; i < N; ++i) r(i, i) = kOne;
  return r;
}

inline Mat2 make_mat2(Elem a, Elem b, Elem c, Elem d) noexcept {
  Mat2 r;
  r.e = {a, b, c, d};
  return r;
}

template <std::size_t N>
Mat<N> mul(const Field& f, const Mat<N>& a, const Mat<N>& b) noexcept {
  Mat<N> r;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      Elem acc;
      for (std::size_t k = 0; k < N; ++k) acc += f.mul(a(i, k), b(k, j));
      r(i, j) = acc;
    }
  }
  return r;
}

template <std::size_t N>
Mat<N> scale(const Field& f, Elem s, const Mat<N>& a) noexcept {
  Mat<N> r;
  for (std::size_t k = 0; k < N * N; ++k) r.e[k] = f.mul(s, a.e[k]);
  return r;
}

Elem det(const Field& f, const Mat2& a) noexcept;
Elem det(const Field& f, const Mat4& a) noexcept;

/// Throws Error(singular_matrix) when det(a) = 0.
Mat2 inverse(const Field& f, const Mat2& a);
Mat4 inverse(const Field& f, const Mat4& a);

/// Row or column subsets of {0,1,2,3} with k members, ascending by bitmask.
std::vector<unsigned> subsets_of_size(unsigned k);

/// All k x k minors of `a` for k in {1,2,3,4}: row subset outer, column subset
/// inner, both ascending by bitmask. Sizes 16, 36, 16, 1.
std::vector<Elem> minors(const Field& f, const Mat4& a, unsigned k);

bool is_involutory(const Field& f, const Mat4& a) noexcept;

/// Every square sub-matrix nonsingular: 16 entries, 36 2x2 minors, 16 3x3
/// minors and the determinant, checked in that order with early abort.
bool is_mds_full(const Field& f, const Mat4& a) noexcept;

/// MDS test for an involutory matrix: since det = 1 and the matrix is its own
/// inverse, the 3x3 minors are (up to sign) its entries, so entries and 2x2
/// minors suffice. With `verify` set the involutory precondition is checked
/// and Error(not_involutory) thrown when it fails.
bool is_mds_fast_involutory(const Field& f, const Mat4& a, bool verify = false);

/// Row rank by Gaussian elimination, in [0, 4].
unsigned rank(const Field& f, const Mat4& a) noexcept;

bool row_col_sums_one(const Mat4& a) noexcept;
bool row_col_sums_one(const Mat2& a) noexcept;

/// Block access for the 2x2 partition [[A, B], [C, D]].
Mat2 block(const Mat4& a, std::size_t bi, std::size_t bj) noexcept;
Mat4 from_blocks(const Mat2& a, const Mat2& b, const Mat2& c, const Mat2& d) noexcept;

}  // namespace imds
