#pragma once

#include <cstdint>
#include <random>

#include "imds/forms.hpp"

namespace imds::testing {

// Carry-less product reduced mod poly, written independently of Field.
inline std::uint8_t schoolbook_mul(unsigned a, unsigned b, unsigned poly, unsigned m) {
  unsigned acc = 0;
  for (unsigned i = 0; i < m; ++i) {
    if ((b >> i) & 1u) acc ^= a << i;
  }
  for (int i = 2 * static_cast<int>(m); i >= static_cast<int>(m); --i) {
    if ((acc >> i) & 1u) acc ^= poly << (i - static_cast<int>(m));
  }
  return static_cast<std::uint8_t>(acc);
}

// x^k by repeated schoolbook multiplication.
inline std::uint8_t schoolbook_x_pow(unsigned k, unsigned poly, unsigned m) {
  unsigned v = 1;
  for (unsigned i = 0; i < k; ++i) v = schoolbook_mul(v, 2, poly, m);
  return static_cast<std::uint8_t>(v);
}

// Fixtures over GF(2^4) / x^4 + x + 1, written as generator exponents
// (-1 for zero).
inline Mat4 from_exponents(const Field& f, const int (&k)[16]) {
  Mat4 m;
  for (std::size_t i = 0; i < 16; ++i) m.e[i] = k[i] < 0 ? kZero : f.alpha_pow(k[i]);
  return m;
}

// Involutory MDS matrix with D = (a^9, a^13, a^12) and representative sample_M_rep.
inline Mat4 sample_M(const Field& f) {
  return from_exponents(f, {0, 0, 0, 0, 0, 1, 2, 5, 7, 10, 1, 5, 9, 2, 10, 0});
}

// Its class representative.
inline Mat4 sample_M_rep(const Field& f) {
  return from_exponents(f, {0, 6, 2, 3, 9, 1, 13, 2, 5, 14, 1, 6, 6, 5, 9, 0});
}

// Representative of the tuple (1, 1, a, a, a).
inline Mat4 sample_rep_R(const Field& f) {
  return from_exponents(f, {12, 1, 8, 14, 9, 4, 14, 0, 5, 1, 12, 9, 1, 1, 1, 4});
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  Elem any(const Field& f) {
    return Elem(static_cast<std::uint8_t>(pick(f.order())));
  }
  Elem unit(const Field& f) {
    return Elem(static_cast<std::uint8_t>(1 + pick(f.order() - 1)));
  }
  unsigned pick(unsigned n) { return std::uniform_int_distribution<unsigned>(0, n - 1)(gen_); }

  Mat2 nonsingular2(const Field& f) {
    for (;;) {
      const Mat2 m = make_mat2(any(f), any(f), any(f), any(f));
      if (!det(f, m).is_zero()) return m;
    }
  }
  Mat4 any4(const Field& f) {
    Mat4 m;
    for (auto& x : m.e) x = any(f);
    return m;
  }
  RepTuple tuple(const Field& f) { return {unit(f), unit(f), unit(f), unit(f), unit(f)}; }
  DiagTriple diag(const Field& f) { return {unit(f), unit(f), unit(f)}; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace imds::testing
