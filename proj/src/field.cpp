#include "imds/field.hpp"

#include <bit>
#include <string>

namespace imds {
namespace {

int poly_degree(std::uint32_t p) {
  return p == 0 ? -1 : 31 - std::countl_zero(p);
}

// Remainder of a by b over GF(2)[x].
std::uint32_t poly_mod(std::uint32_t a, std::uint32_t b) {
  const int db = poly_degree(b);
  for (int da = poly_degree(a); da >= db; da = poly_degree(a)) {
    a ^= b << (da - db);
  }
  return a;
}

// Schoolbook carry-less product reduced modulo poly. Only used to seed the
// tables; the hot paths go through log/antilog.
std::uint8_t clmul_mod(std::uint8_t a, std::uint8_t b, std::uint16_t poly, unsigned m) {
  std::uint32_t acc = 0;
  for (unsigned i = 0; i < m; ++i) {
    if ((b >> i) & 1u) acc ^= static_cast<std::uint32_t>(a) << i;
  }
  return static_cast<std::uint8_t>(poly_mod(acc, poly));
}

unsigned multiplicative_order(std::uint8_t g, std::uint16_t poly, unsigned m) {
  std::uint8_t x = g;
  unsigned k = 1;
  while (x != 1) {
    x = clmul_mod(x, g, poly, m);
    ++k;
  }
  return k;
}

std::string hex(unsigned v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  do {
    s.insert(s.begin(), digits[v & 0xf]);
    v >>= 4;
  } while (v != 0);
  return "0x" + s;
}

}  // namespace

std::uint16_t default_poly(unsigned m) {
  switch (m) {
    case 3: return 0x0b;   // x^3 + x + 1
    case 4: return 0x13;   // x^4 + x + 1
    case 5: return 0x25;   // x^5 + x^2 + 1
    case 6: return 0x43;   // x^6 + x + 1
    case 7: return 0x83;   // x^7 + x + 1
    case 8: return 0x11b;  // x^8 + x^4 + x^3 + x + 1
    default:
      throw Error(ErrorCode::invalid_degree,
                  "degree m=" + std::to_string(m) + " outside supported range [3, 8]");
  }
}

bool is_irreducible(std::uint32_t poly) {
  const int deg = poly_degree(poly);
  if (deg < 1) return false;
  for (std::uint32_t d = 2; poly_degree(d) <= deg / 2; ++d) {
    if (poly_mod(poly, d) == 0) return false;
  }
  return true;
}

Field::Field(unsigned m, std::optional<std::uint16_t> poly) : m_(m) {
  if (m < kMinDegree || m > kMaxDegree) {
    throw Error(ErrorCode::invalid_degree,
                "degree m=" + std::to_string(m) + " outside supported range [3, 8]");
  }
  poly_ = poly.value_or(default_poly(m));
  if (poly_degree(poly_) != static_cast<int>(m)) {
    throw Error(ErrorCode::invalid_polynomial,
                "polynomial " + hex(poly_) + " does not have degree " + std::to_string(m));
  }
  if (!is_irreducible(poly_)) {
    throw Error(ErrorCode::reducible_polynomial,
                "polynomial " + hex(poly_) + " is reducible over GF(2)");
  }

  const unsigned q = order();
  const unsigned units = q - 1;

  std::uint8_t g = 2;
  while (multiplicative_order(g, poly_, m) != units) ++g;
  generator_ = Elem(g);

  auto t = std::make_shared<Tables>();
  t->antilog.resize(2 * units);
  t->log.assign(q, 0);
  std::uint8_t x = 1;
  for (unsigned k = 0; k < units; ++k) {
    t->antilog[k] = x;
    t->antilog[k + units] = x;
    t->log[x] = static_cast<std::uint16_t>(k);
    x = clmul_mod(x, g, poly_, m);
  }

  t->product.assign(static_cast<std::size_t>(q) * q, 0);
  for (unsigned a = 1; a < q; ++a) {
    for (unsigned b = 1; b < q; ++b) {
      t->product[(a << m) | b] = t->antilog[t->log[a] + t->log[b]];
    }
  }
  t_ = std::move(t);
}

Elem Field::elem(unsigned bits) const {
  if (bits >= order()) {
    throw Error(ErrorCode::invalid_element,
                hex(bits) + " is not an element of GF(2^" + std::to_string(m_) + ")");
  }
  return Elem(static_cast<std::uint8_t>(bits));
}

Elem Field::inv(Elem a) const {
  if (a.is_zero()) throw Error(ErrorCode::division_by_zero, "inverse of zero");
  const unsigned units = unit_count();
  return Elem(t_->antilog[(units - t_->log[a.bits]) % units]);
}

Elem Field::sqrt(Elem a) const noexcept {
  if (a.is_zero()) return kZero;
  const unsigned long long k = static_cast<unsigned long long>(t_->log[a.bits]) << (m_ - 1);
  return Elem(t_->antilog[k % unit_count()]);
}

Elem Field::pow(Elem a, long long k) const {
  if (a.is_zero()) {
    if (k < 0) throw Error(ErrorCode::division_by_zero, "negative power of zero");
    return k == 0 ? kOne : kZero;
  }
  const long long units = unit_count();
  long long e = (static_cast<long long>(t_->log[a.bits]) * (k % units)) % units;
  if (e < 0) e += units;
  return Elem(t_->antilog[static_cast<std::size_t>(e)]);
}

Elem Field::alpha_pow(long long k) const noexcept {
  const long long units = unit_count();
  long long e = k % units;
  if (e < 0) e += units;
  return Elem(t_->antilog[static_cast<std::size_t>(e)]);
}

unsigned Field::log(Elem a) const {
  if (a.is_zero()) throw Error(ErrorCode::division_by_zero, "logarithm of zero");
  return t_->log[a.bits];
}

std::vector<Elem> Field::units() const {
  std::vector<Elem> out;
  out.reserve(unit_count());
  for (unsigned k = 0; k < unit_count(); ++k) out.emplace_back(t_->antilog[k]);
  return out;
}

}  // namespace imds
