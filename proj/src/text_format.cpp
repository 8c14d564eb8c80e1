#include "imds/text_format.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <limits>
#include <sstream>

namespace imds {
namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

[[noreturn]] void bad_token(std::string_view token, const char* why) {
  throw Error(ErrorCode::parse_error, "cannot parse '" + std::string(token) + "': " + why);
}

unsigned parse_hex(std::string_view digits, std::string_view token) {
  if (digits.empty()) bad_token(token, "empty hex literal");
  unsigned v = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v, 16);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) bad_token(token, "bad hex digits");
  return v;
}

}  // namespace

std::string format_elem(const Field& f, Elem x, Notation n) {
  if (n == Notation::alpha) {
    if (x.is_zero()) return "0";
    return "a^" + std::to_string(f.log(x));
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "0x%02x", static_cast<unsigned>(x.bits));
  return buf;
}

Elem parse_elem(const Field& f, std::string_view token) {
  const std::string t = trim(token);
  std::string_view s = t;
  if (s.empty()) bad_token(token, "empty element");
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    return f.elem(parse_hex(s.substr(2), token));
  }
  std::string_view rest;
  if (s.starts_with("a")) {
    rest = s.substr(1);
  } else if (s.starts_with("\xce\xb1")) {  // UTF-8 alpha
    rest = s.substr(2);
  } else if (s == "0") {
    return kZero;
  } else if (s == "1") {
    return kOne;
  } else {
    bad_token(token, "expected 0x.., a^k, 0 or 1");
  }
  if (rest.empty()) return f.generator();
  if (rest[0] != '^') bad_token(token, "expected '^' after generator symbol");
  rest.remove_prefix(1);
  long long k = 0;
  const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
  if (rest.empty() || ec != std::errc() || ptr != rest.data() + rest.size()) {
    bad_token(token, "bad exponent");
  }
  return f.alpha_pow(k);
}

std::uint16_t parse_poly(std::string_view text) {
  const std::string t = trim(text);
  std::string_view s = t;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s.remove_prefix(2);
  const unsigned v = parse_hex(s, text);
  if (v > 0x1ff) bad_token(text, "polynomial degree exceeds 8");
  return static_cast<std::uint16_t>(v);
}

std::string format_poly(std::uint16_t poly) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "0x%02x", static_cast<unsigned>(poly));
  return buf;
}

RepTuple parse_tuple(const Field& f, std::string_view text) {
  std::vector<Elem> v;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    v.push_back(parse_elem(f, text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (v.size() != 5) {
    throw Error(ErrorCode::parse_error, "tuple needs exactly 5 elements p,q,r,c,d");
  }
  return RepTuple{v[0], v[1], v[2], v[3], v[4]};
}

std::vector<std::string> elem_strings(const Field& f, const Mat4& a, Notation n) {
  std::vector<std::string> out;
  out.reserve(16);
  for (Elem x : a.e) out.push_back(format_elem(f, x, n));
  return out;
}

std::string format_matrix(const Field& f, const Mat4& a, Notation n) {
  std::string out;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (j) out += ' ';
      out += format_elem(f, a(i, j), n);
    }
    out += '\n';
  }
  return out;
}

Mat4 parse_matrix(const Field& f, std::string_view text) {
  std::vector<std::string> tokens;
  std::istringstream lines{std::string(text)};
  for (std::string line; std::getline(lines, line);) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    for (std::string w; words >> w;) tokens.push_back(w);
  }
  if (tokens.size() != 16) {
    throw Error(ErrorCode::parse_error,
                "matrix needs 16 elements, found " + std::to_string(tokens.size()));
  }
  Mat4 m;
  for (std::size_t i = 0; i < 16; ++i) m.e[i] = parse_elem(f, tokens[i]);
  return m;
}

nlohmann::json rep_record(const Field& f, const RepTuple& t, const Mat4& R, Notation n) {
  nlohmann::json j;
  j["m"] = f.degree();
  j["poly"] = format_poly(f.poly());
  j["tuple"] = {format_elem(f, t.p, n), format_elem(f, t.q, n), format_elem(f, t.r, n),
                format_elem(f, t.c, n), format_elem(f, t.d, n)};
  j["matrix"] = elem_strings(f, R, n);
  return j;
}

nlohmann::json member_record(const Field& f, const RepTuple& t, const DiagTriple& D,
                             const Mat4& M, Notation n) {
  nlohmann::json j = rep_record(f, t, M, n);
  j["diag"] = {format_elem(f, D.b1, n), format_elem(f, D.b2, n), format_elem(f, D.b3, n)};
  return j;
}

nlohmann::json canonical_json(const Field& f, const Canonical& c, Notation n) {
  nlohmann::json j;
  j["R"] = elem_strings(f, c.R, n);
  j["D"] = {format_elem(f, c.D.b1, n), format_elem(f, c.D.b2, n), format_elem(f, c.D.b3, n)};
  j["tuple"] = {format_elem(f, c.tuple.p, n), format_elem(f, c.tuple.q, n),
                format_elem(f, c.tuple.r, n), format_elem(f, c.tuple.c, n),
                format_elem(f, c.tuple.d, n)};
  return j;
}

nlohmann::json report_json(const EnumerationReport& r) {
  nlohmann::json j;
  j["m"] = r.m;
  j["poly"] = format_poly(r.poly);
  j["rep_count"] = r.rep_count;
  // rep_count is bounded by the tuple space, so for m <= 8 this always fits
  if (r.total_count <= std::numeric_limits<std::uint64_t>::max()) {
    j["total_count"] = static_cast<std::uint64_t>(r.total_count);
  } else {
    j["total_count"] = to_decimal(r.total_count);
  }
  j["candidates_tested"] = r.candidates_tested;
  j["tuples_scanned"] = r.tuples_scanned;
  j["cursor"] = r.cursor;
  j["completed"] = r.completed;
  j["elapsed"] = r.elapsed;
  return j;
}

}  // namespace imds
