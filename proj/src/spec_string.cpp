#include "pdtkit/spec_string.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "pdtkit/error.hpp"
#include "pdtkit/families.hpp"

namespace pdtkit {
namespace {

[[noreturn]] void parse_fail(std::size_t pos, const std::string& what) {
  fail(ErrorCode::parse_error, "at position " + std::to_string(pos) + ": " + what);
}

// "<n>:" starting at pos; returns n and moves pos past the colon.
unsigned parse_arity(std::string_view text, std::size_t& pos) {
  const std::size_t colon = text.find(':', pos);
  if (colon == std::string_view::npos) parse_fail(text.size(), "expected ':' after the arity");
  unsigned n = 0;
  const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + colon, n);
  if (ec != std::errc() || ptr != text.data() + colon || colon == pos) parse_fail(pos, "expected an arity");
  if (n < 1 || n > kMaxVars) {
    parse_fail(pos, "arity must lie in [1, " + std::to_string(kMaxVars) + "], got " + std::to_string(n));
  }
  pos = colon + 1;
  return n;
}

BooleanFunction parse_truth_table(std::string_view text, std::size_t pos) {
  const unsigned n = parse_arity(text, pos);
  const std::size_t points = std::size_t{1} << n;
  const std::size_t digits = (points + 3) / 4;
  const std::string_view hex = text.substr(pos);
  if (hex.size() != digits) {
    parse_fail(pos, "expected exactly " + std::to_string(digits) + " hex digits for n = " + std::to_string(n) +
                        ", got " + std::to_string(hex.size()));
  }
  std::vector<std::uint8_t> table(points, 0);
  for (std::size_t j = 0; j < digits; ++j) {
    const char c = hex[digits - 1 - j];
    unsigned v = 0;
    if (c >= '0' && c <= '9') {
      v = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      v = static_cast<unsigned>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      v = static_cast<unsigned>(c - 'A' + 10);
    } else {
      parse_fail(pos + digits - 1 - j, "expected a hex digit");
    }
    for (unsigned b = 0; b < 4; ++b) {
      if (((v >> b) & 1u) == 0) continue;
      const std::size_t x = 4 * j + b;
      if (x >= points) parse_fail(pos + digits - 1 - j, "bits beyond 2^n must be zero");
      table[x] = 1;
    }
  }
  return BooleanFunction(n, std::move(table));
}

BooleanFunction parse_anf(std::string_view text, std::size_t pos) {
  const unsigned n = parse_arity(text, pos);
  std::vector<std::uint8_t> present(std::size_t{1} << n, 0);
  bool expect_term = true;
  Mask term = 0;
  bool term_zero = false;
  bool term_started = false;
  const auto close_term = [&](std::size_t at) {
    if (!term_started) parse_fail(at, "expected a term");
    if (!term_zero) present[term] ^= 1;
    term = 0;
    term_zero = false;
    term_started = false;
  };
  std::size_t i = pos;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ') {
      ++i;
    } else if (expect_term && (c == '1' || c == '0')) {
      if (c == '0') term_zero = true;
      term_started = true;
      expect_term = false;
      ++i;
    } else if (expect_term && c == 'x') {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
      unsigned var = 0;
      const auto [ptr, ec] = std::from_chars(text.data() + i + 1, text.data() + j, var);
      if (ec != std::errc() || j == i + 1) parse_fail(i + 1, "expected a variable index");
      if (var < 1 || var > n) parse_fail(i + 1, "variable x" + std::to_string(var) + " outside 1.." + std::to_string(n));
      term |= Mask{1} << (var - 1);
      term_started = true;
      expect_term = false;
      i = j;
    } else if (!expect_term && c == '*') {
      expect_term = true;
      ++i;
    } else if (!expect_term && c == '+') {
      close_term(i);
      expect_term = true;
      ++i;
    } else {
      parse_fail(i, std::string("unexpected '") + c + "'");
    }
  }
  if (expect_term) parse_fail(text.size(), "expected a term");
  close_term(text.size());
  Anf anf{n, {}};
  for (Mask m = 0; m < present.size(); ++m) {
    if (present[m]) anf.monomials.push_back(m);
  }
  return from_anf(anf);
}

}  // namespace

BooleanFunction parse_function_spec(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) parse_fail(0, "expected tt:, anf: or family:");
  const std::string_view scheme = text.substr(0, colon);
  if (scheme == "tt") return parse_truth_table(text, colon + 1);
  if (scheme == "anf") return parse_anf(text, colon + 1);
  if (scheme == "family") return generate(parse_family(text.substr(colon + 1), colon + 1));
  parse_fail(0, "unknown scheme '" + std::string(scheme) + "'");
}

}  // namespace pdtkit
