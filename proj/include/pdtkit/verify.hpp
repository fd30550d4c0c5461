#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdtkit/core.hpp"

namespace pdtkit {

struct InvariantCheck {
  std::string name;
  std::string lhs;
  std::string rhs;
  bool holds = false;
};

struct InvariantReport {
  std::vector<InvariantCheck> checks;
  bool overall = true;
  /// Depth of the shallowest built tree; -1 when tree checks were skipped.
  int best_depth = -1;
};

inline constexpr unsigned kMaxTreeCheckVars = 10;

/// Every exactly checkable inequality for f. Tree-dependent checks run only
/// for n <= kMaxTreeCheckVars.
InvariantReport invariant_report(const BooleanFunction& f);

struct ChangResult {
  std::size_t span = 0;
  double bound = 0.0;
  bool holds = false;
};

/// Span of {s : |f^(s)| >= eps_num / 2^n} against 2 (rho/eps)^2 ln(1/rho),
/// rho the density of ones. Throws zero_density for f = 0 and
/// invalid_argument for eps_num <= 0.
ChangResult chang_check(const BooleanFunction& f, std::int64_t eps_num);

struct BoundBConfig {
  double c3 = 9.0;
  double b3 = 5.0;
};

/// B_3(m) = c3 log2(m + 1) + b3,
/// B_d(m) = B_{d-1}(m^2) log2(m) + B_{d-1}(m) + 1.
/// Throws invalid_degree for d < 3 or m < 1, overflow if not finite.
double bound_B(int d, double m, BoundBConfig config = {});

/// 2^((d-2)(d-3)/2) log2(m)^(d-2).
double bound_B_leading(int d, double m);

}  // namespace pdtkit
