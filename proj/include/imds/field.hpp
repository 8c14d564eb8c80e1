#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "imds/error.hpp"

namespace imds {

/// One element of GF(2^m) in the polynomial basis: bit i is the coefficient
/// of x^i. Addition is field independent (XOR), everything else goes
/// through a Field.
struct Elem {
  std::uint8_t bits = 0;

  constexpr Elem() = default;
  constexpr explicit Elem(std::uint8_t b) : bits(b) {}

  constexpr bool is_zero() const noexcept { return bits == 0; }

  friend constexpr Elem operator+(Elem a, Elem b) noexcept {
    return Elem(static_cast<std::uint8_t>(a.bits ^ b.bits));
  }
  friend constexpr Elem operator-(Elem a, Elem b) noexcept { return a + b; }
  constexpr Elem& operator+=(Elem o) noexcept {
    bits ^= o.bits;
    return *this;
  }
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

inline constexpr Elem kZero{0};
inline constexpr Elem kOne{1};

/// Smallest supported and largest supported extension degree.
inline constexpr unsigned kMinDegree = 3;
inline constexpr unsigned kMaxDegree = 8;

/// Conventional irreducible (primitive) modulus for each supported degree.
std::uint16_t default_poly(unsigned m);

/// True iff `poly` (bit pattern, bit i = coefficient of x^i) is irreducible
/// over GF(2). Trial division by every polynomial of degree <= deg/2.
bool is_irreducible(std::uint32_t poly);

/// GF(2^m) for 3 <= m <= 8. Immutable once built; copies share the tables,
/// so a Field is cheap to pass by value and safe to share between threads.
class Field {
 public:
  /// Throws Error(invalid_degree) for m outside [3, 8], Error(invalid_polynomial)
  /// if `poly` is not of degree m, Error(reducible_polynomial) if it factors.
  explicit Field(unsigned m, std::optional<std::uint16_t> poly = std::nullopt);

  unsigned degree() const noexcept { return m_; }
  std::uint16_t poly() const noexcept { return poly_; }
  unsigned order() const noexcept { return 1u << m_; }
  unsigned unit_count() const noexcept { return order() - 1; }
  /// Primitive element used for the log tables (x itself when poly is primitive).
  Elem generator() const noexcept { return generator_; }

  /// Checked construction from a raw bit pattern.
  Elem elem(unsigned bits) const;

  static constexpr Elem add(Elem a, Elem b) noexcept { return a + b; }

  Elem mul(Elem a, Elem b) const noexcept {
    if (a.is_zero() || b.is_zero()) return kZero;
    return Elem(t_->antilog[t_->log[a.bits] + t_->log[b.bits]]);
  }
  Elem square(Elem a) const noexcept { return mul(a, a); }
  /// Throws Error(division_by_zero) on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  /// The unique s with s*s = a, i.e. a^(2^(m-1)).
  Elem sqrt(Elem a) const noexcept;
  /// a^k for any integer k; negative k requires a != 0.
  Elem pow(Elem a, long long k) const;

  /// alpha^k with k reduced modulo 2^m - 1.
  Elem alpha_pow(long long k) const noexcept;
  /// Discrete log base the generator, in [0, 2^m - 1). Throws on zero.
  unsigned log(Elem a) const;

  /// All units in the canonical order alpha^0, alpha^1, ..., alpha^(2^m - 2).
  std::vector<Elem> units() const;

  /// Row-major 2^m x 2^m product table, index (a << m) | b.
  std::span<const std::uint8_t> mul_table() const noexcept { return t_->product; }

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.m_ == b.m_ && a.poly_ == b.poly_;
  }

 private:
  struct Tables {
    // antilog has 2(2^m - 1) entries so that log[a] + log[b] never needs reducing
    std::vector<std::uint8_t> antilog;
    std::vector<std::uint16_t> log;
    std::vector<std::uint8_t> product;
  };

  unsigned m_;
  std::uint16_t poly_;
  Elem generator_;
  std::shared_ptr<const Tables> t_;
};

}  // namespace imds
