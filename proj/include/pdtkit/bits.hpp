#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

namespace pdtkit {

/// A vector in GF(2)^n, bit i-1 holding coordinate x_i.
using Mask = std::uint32_t;

/// Largest arity accepted anywhere in the library.
inline constexpr unsigned kMaxVars = 24;

inline constexpr Mask full_mask(unsigned n) noexcept {
  return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1;
}

inline constexpr unsigned weight(Mask m) noexcept { return static_cast<unsigned>(std::popcount(m)); }

/// <s,t> over GF(2).
inline constexpr unsigned dot(Mask s, Mask t) noexcept { return weight(s & t) & 1u; }

inline constexpr unsigned lowest_bit(Mask m) noexcept {
  return static_cast<unsigned>(std::countr_zero(m));
}

/// Order of bitstrings x1x2...xn read left to right: at the first differing
/// coordinate, the mask holding 0 is smaller.
inline constexpr bool lex_less(Mask a, Mask b) noexcept {
  const Mask diff = a ^ b;
  return diff != 0 && (b & diff & (~diff + 1)) != 0;
}

struct LexLess {
  constexpr bool operator()(Mask a, Mask b) const noexcept { return lex_less(a, b); }
};

/// Drop bit `pos` and shift higher bits down.
inline constexpr Mask remove_bit(Mask m, unsigned pos) noexcept {
  const Mask low = m & ((Mask{1} << pos) - 1);
  return low | ((m >> (pos + 1)) << pos);
}

/// Insert a zero at `pos`, shifting bits at and above it up.
inline constexpr Mask insert_zero(Mask m, unsigned pos) noexcept {
  const Mask low = m & ((Mask{1} << pos) - 1);
  return low | ((m >> pos) << (pos + 1));
}

/// Bitstring x1x2...xn.
std::string to_bitstring(Mask m, unsigned n);

/// Parses x1x2...xn; throws parse_error on anything but '0'/'1'.
Mask parse_bitstring(std::string_view text);

}  // namespace pdtkit
