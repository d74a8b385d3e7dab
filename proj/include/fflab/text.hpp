#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Tokenizer shared by every textual polynomial format in the library.
// A polynomial text is a sum of terms `[coef[*]]var[^e]` or `coef`, where
// coef is a decimal integer or a parenthesized sub-expression.
namespace fflab::text {

struct Term {
  bool negative = false;
  std::string coefficient;  // empty means 1; parenthesized text is unwrapped
  bool parenthesized = false;
  unsigned exponent = 0;
};

std::vector<Term> split_terms(std::string_view input, char var);

/// Polynomial with integer coefficients, constant term first.
std::vector<std::int64_t> parse_int_poly(std::string_view input, char var);

/// Inverse of parse_int_poly for coefficient lists (no trailing zeros expected).
std::string format_int_poly(const std::vector<std::int64_t>& coeffs, char var);

/// Monomial suffix "", "t", or "t^k".
std::string monomial(char var, std::size_t exponent);

}  // namespace fflab::text
