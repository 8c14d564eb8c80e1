#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "imds/enumerator.hpp"
#include "imds/forms.hpp"

namespace imds {

/// hex: polynomial basis, "0x0b". alpha: generator power, "a^9" (zero is "0").
enum class Notation { hex, alpha };

std::string format_elem(const Field& f, Elem x, Notation n = Notation::hex);

/// Accepts "0x.." hex, "a^k" / "α^k" (k may be negative), "a", "0" and "1".
/// Throws Error(parse_error) or Error(invalid_element).
Elem parse_elem(const Field& f, std::string_view token);

/// Hex bit pattern such as "0x13"; bit m must be the leading bit.
std::uint16_t parse_poly(std::string_view text);
std::string format_poly(std::uint16_t poly);

/// Five comma-separated elements, "p,q,r,c,d".
RepTuple parse_tuple(const Field& f, std::string_view text);

/// Four lines of four space-separated tokens.
std::string format_matrix(const Field& f, const Mat4& a, Notation n = Notation::hex);

/// Exactly 16 whitespace-separated tokens, row-major; '#' starts a comment.
Mat4 parse_matrix(const Field& f, std::string_view text);

std::vector<std::string> elem_strings(const Field& f, const Mat4& a, Notation n = Notation::hex);

/// {"m", "poly", "tuple": [p,q,r,c,d], "matrix": [16]}
nlohmann::json rep_record(const Field& f, const RepTuple& t, const Mat4& R,
                          Notation n = Notation::hex);

/// rep_record of the class member plus "diag": [b1, b2, b3].
nlohmann::json member_record(const Field& f, const RepTuple& t, const DiagTriple& D,
                             const Mat4& M, Notation n = Notation::hex);

nlohmann::json canonical_json(const Field& f, const Canonical& c, Notation n = Notation::hex);

nlohmann::json report_json(const EnumerationReport& r);

}  // namespace imds
