#include "imds/forms.hpp"

#include <string>

namespace imds {
namespace {

void require_nonsingular(const Field& f, const Mat2& a, const char* what) {
  if (det(f, a).is_zero()) {
    throw Error(ErrorCode::singular_block, std::string(what) + " block is singular");
  }
}

}  // namespace

bool is_valid(const RepTuple& t) noexcept {
  return !t.p.is_zero() && !t.q.is_zero() && !t.r.is_zero() && !t.c.is_zero() &&
         !t.d.is_zero();
}

bool is_mds_viable(const Field& f, const RepTuple& t) noexcept {
  return is_valid(t) && t.r != f.mul(t.p, t.q) && t.d != kOne;
}

Mat2 rep_c_block(const Field& f, const RepTuple& t) noexcept {
  return scale(f, t.c, make_mat2(f.mul(t.p, t.q) + t.r, t.p, t.q, kOne));
}

Mat2 rep_p_block(Elem d) noexcept {
  return make_mat2(d + kOne, d, d, d + kOne);
}

Mat4 build_involutory(const Field& f, const Mat2& P, const Mat2& C) {
  require_nonsingular(f, P, "P");
  require_nonsingular(f, C, "C");
  const Mat2 pc = mul(f, P, C);
  const Mat2 cp = mul(f, C, P);
  const Mat2 pcp = mul(f, pc, P);
  return from_blocks(pc, pcp, C, cp) + identity<4>();
}

Mat4 build_representative(const Field& f, const RepTuple& t) {
  if (!is_valid(t)) {
    throw Error(ErrorCode::singular_block, "representative tuple has a zero component");
  }
  return build_involutory(f, rep_p_block(t.d), rep_c_block(f, t));
}

Mat4 expand(const Field& f, const Mat4& R, const DiagTriple& D) {
  const std::array<Elem, 4> d{kOne, D.b1, D.b2, D.b3};
  std::array<Elem, 4> dinv{};
  for (std::size_t i = 0; i < 4; ++i) dinv[i] = f.inv(d[i]);
  Mat4 out;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) out(i, j) = f.mul(f.mul(dinv[i], R(i, j)), d[j]);
  }
  return out;
}

Canonical canonicalize(const Field& f, const Mat4& M, bool verify) {
  if (!is_involutory(f, M)) {
    throw Error(ErrorCode::not_involutory, "matrix is not involutory");
  }
  if (!is_mds_fast_involutory(f, M)) {
    throw Error(ErrorCode::not_mds, "matrix is involutory but not MDS");
  }
  const Mat2 C = block(M, 1, 0);
  require_nonsingular(f, C, "bottom-left");
  const Mat2 CP = block(M, 1, 1) + identity<2>();
  const Mat2 P = mul(f, inverse(f, C), CP);

  const Elem p11 = P(0, 0), p12 = P(0, 1), p21 = P(1, 0), p22 = P(1, 1);
  const Elem b1 = f.sqrt(f.div(f.mul(p11, p12), f.mul(p21, p22)));
  const Elem b2 = p11 + f.mul(b1, p21);
  const Elem b3 = p12 + f.mul(b1, p22);
  if (b2.is_zero() || b3.is_zero()) {
    // cannot happen for a genuine involutory MDS input
    throw Error(ErrorCode::invariant_violation, "conjugator has a zero entry");
  }
  const Elem b1_inv = f.inv(b1), b2_inv = f.inv(b2), b3_inv = f.inv(b3);

  const Mat2 C1 = make_mat2(f.mul(b2, C(0, 0)), f.mul(f.mul(b2, b1_inv), C(0, 1)),
                            f.mul(b3, C(1, 0)), f.mul(f.mul(b3, b1_inv), C(1, 1)));
  const Mat2 P1 = make_mat2(f.mul(p11, b2_inv), f.mul(p12, b3_inv),
                            f.mul(f.mul(b1, p21), b2_inv), f.mul(f.mul(b1, p22), b3_inv));

  Canonical out;
  out.R = build_involutory(f, P1, C1);
  out.D = DiagTriple{b1, b2, b3};
  const Elem c = C1(1, 1);
  const Elem c_inv = f.inv(c);
  out.tuple = RepTuple{f.mul(C1(0, 1), c_inv), f.mul(C1(1, 0), c_inv),
                       f.mul(det(f, C1), f.square(c_inv)), c, P1(0, 1)};

  if (verify) {
    const bool ok = is_involutory(f, out.R) && is_mds_full(f, out.R) &&
                    row_col_sums_one(out.R) && row_col_sums_one(P1) &&
                    expand(f, out.R, out.D) == M &&
                    build_representative(f, out.tuple) == out.R;
    if (!ok) throw Error(ErrorCode::invariant_violation, "canonical form failed verification");
  }
  return out;
}

PCPair from_top_row_form(const Field& f, const Mat2& A1, const Mat2& A2) {
  require_nonsingular(f, A1, "A1");
  require_nonsingular(f, A2, "A2");
  const Mat2 i_plus_a1 = identity<2>() + A1;
  require_nonsingular(f, i_plus_a1, "I + A1");
  const Mat2 P = mul(f, inverse(f, i_plus_a1), A2);
  const Mat2 C = mul(f, inverse(f, A2), identity<2>() + mul(f, A1, A1));
  return {P, C};
}

PCPair from_left_column_form(const Field& f, const Mat2& A1, const Mat2& A3) {
  require_nonsingular(f, A1, "A1");
  require_nonsingular(f, A3, "A3");
  const Mat2 i_plus_a1 = identity<2>() + A1;
  require_nonsingular(f, i_plus_a1, "I + A1");
  return {mul(f, i_plus_a1, inverse(f, A3)), A3};
}

Mat4 top_row_form_matrix(const Field& f, const Mat2& A1, const Mat2& A2) {
  const Mat2 a2_inv = inverse(f, A2);
  return from_blocks(A1, A2, mul(f, a2_inv, identity<2>() + mul(f, A1, A1)),
                     mul(f, mul(f, a2_inv, A1), A2));
}

Mat4 left_column_form_matrix(const Field& f, const Mat2& A1, const Mat2& A3) {
  const Mat2 a3_inv = inverse(f, A3);
  return from_blocks(A1, mul(f, identity<2>() + mul(f, A1, A1), a3_inv), A3,
                     mul(f, mul(f, A3, A1), a3_inv));
}

Mat4 nilpotent_part(const Field& f, const Mat4& M) {
  if (!is_involutory(f, M)) {
    throw Error(ErrorCode::not_involutory, "matrix is not involutory");
  }
  return M + identity<4>();
}

}  // namespace imds
