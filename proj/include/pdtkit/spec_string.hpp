#pragma once

#include <string_view>

#include "pdtkit/core.hpp"

namespace pdtkit {

/// Parses a function specification:
///   tt:<n>:<hex>       bit i of the hexadecimal number is f(i); exactly
///                      ceil(2^n / 4) digits, bits at and above 2^n zero
///   anf:<n>:<poly>     terms joined by '+', a term being 1, 0 or x<i>
///                      factors joined by '*'; repeated terms cancel
///   family:<kind>(...) see parse_family
/// Throws parse_error with a 0-based position, or invalid_spec.
BooleanFunction parse_function_spec(std::string_view text);

}  // namespace pdtkit
