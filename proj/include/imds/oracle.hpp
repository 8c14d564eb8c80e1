#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "imds/field.hpp"
#include "imds/matrix.hpp"

// Brute-force cross-checks for small fields. Everything here is written
// against field arithmetic only; none of the matrix_algebra, forms or
// enumerator routines are used, so a bug there cannot confirm itself.
namespace imds::oracle {

/// 16 entries packed into two words, for hashing and ordering.
struct MatKey {
  std::uint64_t lo = 0, hi = 0;

  friend constexpr bool operator==(const MatKey&, const MatKey&) = default;
  friend constexpr auto operator<=>(const MatKey&, const MatKey&) = default;
};

MatKey key_of(const Mat4& a) noexcept;

struct MatKeyHash {
  std::size_t operator()(const MatKey& k) const noexcept {
    return static_cast<std::size_t>(k.lo * 0x9e3779b97f4a7c15ull ^ (k.hi + (k.lo >> 29)));
  }
};

/// Determinant by the Leibniz sum over all permutations of an n x n
/// row-major block (n <= 4).
Elem leibniz_det(const Field& f, const Elem* rows, std::size_t n);

Mat4 naive_product(const Field& f, const Mat4& a, const Mat4& b);
bool naive_is_involutory(const Field& f, const Mat4& a);
/// Every square sub-matrix of every size has a nonzero Leibniz determinant.
bool naive_is_mds(const Field& f, const Mat4& a);

/// All 2x2 matrices with a d - b c != 0, in lexicographic entry order.
/// GF(8) has 3528 of them.
std::vector<Mat2> nonsingular_mat2(const Field& f);

/// Emits [[PC, PCP], [C, CP]] + I4 for every ordered pair of nonsingular 2x2
/// (P, C). This covers every involutory matrix whose four blocks are
/// nonsingular, each exactly once. Only m = 3 is in budget; m = 4 needs
/// `allow_long`; anything larger throws Error(budget_exceeded). Returns the
/// number of emissions.
std::uint64_t all_involutory_L4(const Field& f, const std::function<void(const Mat4&)>& sink,
                                bool allow_long = false);

/// The involutory MDS subset of all_involutory_L4, filtered with naive_is_mds.
std::vector<Mat4> involutory_mds_set(const Field& f, bool allow_long = false);

struct ConjugationClasses {
  std::vector<std::vector<Mat4>> classes;
};

/// Orbits of `matrices` under M -> D^-1 M D, D = Diag(1, b1, b2, b3). Orbit
/// members not present in the input are an error (the input must be closed).
/// Restricted to m = 3 unless `allow_long`.
ConjugationClasses classify_by_conjugation(const std::vector<Mat4>& matrices, const Field& f,
                                           bool allow_long = false);

}  // namespace imds::oracle
