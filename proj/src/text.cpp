#include "fflab/text.hpp"

#include <cctype>

#include "fflab/error.hpp"

namespace fflab::text {

namespace {

[[noreturn]] void fail(std::string_view input, const std::string& why) {
  raise(ErrorCode::ParseError, "cannot parse '" + std::string(input) + "': " + why);
}

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

}  // namespace

std::vector<Term> split_terms(std::string_view input, char var) {
  const std::string s = strip_spaces(input);
  if (s.empty()) fail(input, "empty polynomial");
  std::vector<Term> terms;
  std::size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    Term term;
    if (s[i] == '+' || s[i] == '-') {
      term.negative = s[i] == '-';
      ++i;
    } else if (!first) {
      fail(input, "expected '+' or '-' between terms");
    }
    first = false;
    if (i >= s.size()) fail(input, "dangling sign");
    bool have_coef = false;
    if (s[i] == '(') {
      int depth = 0;
      std::size_t j = i;
      for (; j < s.size(); ++j) {
        if (s[j] == '(') ++depth;
        if (s[j] == ')' && --depth == 0) break;
      }
      if (j >= s.size()) fail(input, "unbalanced parenthesis");
      term.coefficient = s.substr(i + 1, j - i - 1);
      term.parenthesized = true;
      if (term.coefficient.empty()) fail(input, "empty parentheses");
      i = j + 1;
      have_coef = true;
    } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      term.coefficient = s.substr(i, j - i);
      i = j;
      have_coef = true;
    }
    if (have_coef && i < s.size() && s[i] == '*') {
      ++i;
      if (i >= s.size() || s[i] != var) fail(input, "'*' must be followed by the variable");
    }
    if (i < s.size() && s[i] == var) {
      ++i;
      term.exponent = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) fail(input, "missing exponent");
        term.exponent = static_cast<unsigned>(std::stoul(s.substr(i, j - i)));
        i = j;
      }
    } else if (!have_coef) {
      fail(input, std::string("unexpected character '") + s[i] + "'");
    }
    if (i < s.size() && s[i] != '+' && s[i] != '-') {
      fail(input, std::string("unexpected character '") + s[i] + "'");
    }
    terms.push_back(std::move(term));
  }
  return terms;
}

std::vector<std::int64_t> parse_int_poly(std::string_view input, char var) {
  std::vector<std::int64_t> out;
  for (const Term& term : split_terms(input, var)) {
    std::int64_t c = 1;
    if (!term.coefficient.empty()) {
      if (term.parenthesized) {
        auto inner = parse_int_poly(term.coefficient, var);
        if (inner.size() > 1) fail(input, "nested variable inside coefficient");
        c = inner.empty() ? 0 : inner[0];
      } else {
        c = std::stoll(term.coefficient);
      }
    }
    if (term.negative) c = -c;
    if (out.size() <= term.exponent) out.resize(term.exponent + 1, 0);
    out[term.exponent] += c;
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::string monomial(char var, std::size_t exponent) {
  if (exponent == 0) return "";
  if (exponent == 1) return std::string(1, var);
  return std::string(1, var) + "^" + std::to_string(exponent);
}

std::string format_int_poly(const std::vector<std::int64_t>& coeffs, char var) {
  std::string out;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    std::int64_t c = coeffs[k];
    if (c == 0) continue;
    bool neg = c < 0;
    std::uint64_t mag = neg ? static_cast<std::uint64_t>(-c) : static_cast<std::uint64_t>(c);
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? "-" : "+";
    }
    if (k == 0) {
      out += std::to_string(mag);
    } else {
      if (mag != 1) out += std::to_string(mag) + "*";
      out += monomial(var, k);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace fflab::text
