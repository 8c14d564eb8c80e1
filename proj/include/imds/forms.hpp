#pragma once

#include "imds/matrix.hpp"

namespace imds {

/// Parameters (p, q, r, c, d) of a class representative
///   R = [[PC, PCP], [C, CP]] + I4,  C = c [[pq + r, p], [q, 1]],  P = [[d+1, d], [d, d+1]].
/// All five are units. Representatives that can be MDS additionally have
/// r != pq and d != 1.
struct RepTuple {
  Elem p, q, r, c, d;

  friend constexpr bool operator==(const RepTuple&, const RepTuple&) = default;
};

/// D = Diag(1, b1, b2, b3), all units.
struct DiagTriple {
  Elem b1{1}, b2{1}, b3{1};

  friend constexpr bool operator==(const DiagTriple&, const DiagTriple&) = default;
};

/// Both factors of the (P, C) parameterisation of an involutory matrix.
struct PCPair {
  Mat2 P, C;

  friend constexpr bool operator==(const PCPair&, const PCPair&) = default;
};

struct Canonical {
  Mat4 R;
  DiagTriple D;
  RepTuple tuple;
};

/// True iff every component is a unit.
bool is_valid(const RepTuple& t) noexcept;
/// r != pq and d != 1: the only tuples whose representative can be MDS.
bool is_mds_viable(const Field& f, const RepTuple& t) noexcept;

Mat2 rep_c_block(const Field& f, const RepTuple& t) noexcept;
Mat2 rep_p_block(Elem d) noexcept;

/// [[PC, PCP], [C, CP]] + I4, involutory for every nonsingular P and C.
/// Throws Error(singular_block) if either block is singular.
Mat4 build_involutory(const Field& f, const Mat2& P, const Mat2& C);

/// Throws Error(singular_block) if any tuple component is zero.
Mat4 build_representative(const Field& f, const RepTuple& t);

/// D^-1 R D, i.e. entry (i, j) scaled by d_j / d_i.
Mat4 expand(const Field& f, const Mat4& R, const DiagTriple& D);

/// Splits an involutory MDS matrix into its class representative and the unique
/// conjugator with expand(R, D) = M.
///
/// C is the bottom-left block and P = C^-1 (bottom-right + I2). The conjugator is
///   b1 = sqrt(p11 p12 / (p21 p22)),  b2 = p11 + b1 p21,  b3 = p12 + b1 p22,
/// and the representative's blocks follow as
///   C1 = [[b2 c11, b2 c12 / b1], [b3 c21, b3 c22 / b1]],
///   P1 = [[p11 / b2, p12 / b3], [b1 p21 / b2, b1 p22 / b3]].
///
/// Throws Error(not_involutory), Error(not_mds), or Error(singular_block). With
/// `verify` set the result is re-checked (R involutory MDS with unit row and
/// column sums, expand(R, D) == M) and Error(invariant_violation) raised on a
/// mismatch.
Canonical canonicalize(const Field& f, const Mat4& M, bool verify = false);

/// (P, C) for the form [[A1, A2], [A2^-1 (I + A1^2), A2^-1 A1 A2]]:
/// P = (I + A1)^-1 A2, C = A2^-1 (I + A1^2).
PCPair from_top_row_form(const Field& f, const Mat2& A1, const Mat2& A2);

/// (P, C) for the form [[A1, (I + A1^2) A3^-1], [A3, A3 A1 A3^-1]]:
/// P = (I + A1) A3^-1, C = A3.
PCPair from_left_column_form(const Field& f, const Mat2& A1, const Mat2& A3);

/// Block assembly of the two literature forms, independent of (P, C).
Mat4 top_row_form_matrix(const Field& f, const Mat2& A1, const Mat2& A2);
Mat4 left_column_form_matrix(const Field& f, const Mat2& A1, const Mat2& A3);

/// N = M + I4; N^2 = 0 whenever M is involutory. Throws Error(not_involutory).
Mat4 nilpotent_part(const Field& f, const Mat4& M);

}  // namespace imds
