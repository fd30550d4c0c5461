#include "pdtkit/error.hpp"

#include "pdtkit/bits.hpp"

namespace pdtkit {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::not_boolean: return "NotBoolean";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::invalid_eta: return "InvalidEta";
    case ErrorCode::dependent_input: return "DependentInput";
    case ErrorCode::zero_direction: return "ZeroDirection";
    case ErrorCode::dependent_constraints: return "DependentConstraints";
    case ErrorCode::not_found: return "NotFound";
    case ErrorCode::constant_input: return "ConstantInput";
    case ErrorCode::invalid_tree: return "InvalidTree";
    case ErrorCode::too_large: return "TooLarge";
    case ErrorCode::invalid_spec: return "InvalidSpec";
    case ErrorCode::zero_density: return "ZeroDensity";
    case ErrorCode::invalid_degree: return "InvalidDegree";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::overflow: return "Overflow";
  }
  return "Unknown";
}

std::string to_bitstring(Mask m, unsigned n) {
  std::string out(n, '0');
  for (unsigned i = 0; i < n; ++i) {
    if ((m >> i) & 1u) out[i] = '1';
  }
  return out;
}

Mask parse_bitstring(std::string_view text) {
  if (text.empty() || text.size() > kMaxVars) {
    fail(ErrorCode::parse_error, "bitstring must have 1.." + std::to_string(kMaxVars) +
                                     " characters, got '" + std::string(text) + "'");
  }
  Mask m = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      m |= Mask{1} << i;
    } else if (text[i] != '0') {
      fail(ErrorCode::parse_error, "bad character in bitstring '" + std::string(text) +
                                       "' at position " + std::to_string(i));
    }
  }
  return m;
}

}  // namespace pdtkit
