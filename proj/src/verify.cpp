#include "pdtkit/verify.hpp"

#include <bit>
#include <cmath>
#include <cstdio>

#include "pdtkit/error.hpp"
#include "pdtkit/gf2.hpp"
#include "pdtkit/pdt.hpp"
#include "pdtkit/restrict.hpp"

namespace pdtkit {
namespace {

std::string real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::int64_t pow2(unsigned k) {
  if (k > 62) fail(ErrorCode::overflow, "2^" + std::to_string(k) + " exceeds 64-bit numerators");
  return std::int64_t{1} << k;
}

class Report {
 public:
  void add(std::string name, std::string lhs, std::string rhs, bool holds) {
    report_.overall = report_.overall && holds;
    report_.checks.push_back({std::move(name), std::move(lhs), std::move(rhs), holds});
  }
  InvariantReport& get() { return report_; }

 private:
  InvariantReport report_;
};

// First failing direction or the worst-case figures over all of them.
struct Sweep {
  bool holds = true;
  std::string detail = "all";
  void fail_at(const std::string& what) {
    if (holds) detail = what;
    holds = false;
  }
};

std::vector<Mask> directions(unsigned n) {
  std::vector<Mask> out;
  if (n <= kMaxTreeCheckVars) {
    for (Mask t = 1; t <= full_mask(n); ++t) out.push_back(t);
  } else {
    for (unsigned i = 0; i < n; ++i) out.push_back(Mask{1} << i);
  }
  return out;
}

}  // namespace

InvariantReport invariant_report(const BooleanFunction& f) {
  const unsigned n = f.arity();
  const int k = static_cast<int>(n);
  const Spectrum s = wht(f);
  const Spectrum pm = to_pm_spectrum(s);
  const auto st = spectral_stats(s);
  const auto pst = spectral_stats(pm);
  const std::int64_t den = pow2(n);
  Report r;

  // Parseval in numerator units, both ranges.
  {
    std::int64_t sq = 0;
    for (const auto& c : s.terms()) sq = checked_add(sq, checked_mul(c.num, c.num));
    const std::int64_t rhs = checked_mul(den, static_cast<std::int64_t>(f.ones()));
    r.add("parseval", std::to_string(sq), std::to_string(rhs), sq == rhs);
    std::int64_t pm_sq = 0;
    for (const auto& c : pm.terms()) pm_sq = checked_add(pm_sq, checked_mul(c.num, c.num));
    r.add("parseval_pm", std::to_string(pm_sq), std::to_string(checked_mul(den, den)),
          pm_sq == checked_mul(den, den));
  }

  // (f^pm)^2 = 1.
  {
    const Spectrum sq = pointwise_product(pm, pm);
    const std::int64_t at0 = sq.at(0);
    const std::size_t off = sq.sparsity() - (at0 != 0 ? 1 : 0);
    r.add("autocorrelation_zero", dyadic_string(at0, sq.denom_exp()), "1/1", at0 == checked_mul(den, den));
    r.add("autocorrelation_nonzero", std::to_string(off), "0", off == 0);
  }

  // deg2 <= log2 l0, i.e. 2^deg <= l0.
  {
    const int d = deg2(f);
    const bool holds = st.l0 == 0 ? d == 0 : (std::size_t{1} << d) <= st.l0;
    r.add("degree_vs_sparsity", std::to_string(d), "log2(" + std::to_string(st.l0) + ")", holds);
  }

  // l1 <= sqrt(l0): l1_num^2 <= l0 * 4^n.
  for (const auto* view : {&s, &pm}) {
    const auto v = spectral_stats(*view);
    const bool holds = checked_mul(v.l1_num, v.l1_num) <= checked_mul(static_cast<std::int64_t>(v.l0), checked_mul(den, den));
    r.add(view == &s ? "l1_vs_sqrt_l0" : "l1_vs_sqrt_l0_pm", dyadic_string(v.l1_num, k),
          "sqrt(" + std::to_string(v.l0) + ")", holds);
  }

  // Granularity of the +-1 spectrum.
  if (pst.l0 >= 2) {
    const int bound = static_cast<int>(std::bit_width(pst.l0)) - 2;
    r.add("granularity", std::to_string(pst.granularity), std::to_string(bound), pst.granularity <= bound);
  }

  // 2 l1(f) - 1 <= l1(f^pm) <= 2 l1(f) + 1.
  {
    const std::int64_t lo = 2 * st.l1_num - den;
    const std::int64_t hi = 2 * st.l1_num + den;
    r.add("range_switch", dyadic_string(pst.l1_num, k),
          "[" + dyadic_string(lo, k) + ", " + dyadic_string(hi, k) + "]", lo <= pst.l1_num && pst.l1_num <= hi);
  }

  // l0 <= 4^depth for the shallowest of the cheap builders.
  if (n <= kMaxTreeCheckVars) {
    std::size_t best = n + 1;
    for (Strategy strategy : {Strategy::greedy_l1, Strategy::heavy_hitter, Strategy::span_query}) {
      const auto check = pdt_check(build(f, strategy).tree, f);
      if (check.correct) best = std::min(best, check.depth);
    }
    r.get().best_depth = static_cast<int>(best);
    const bool holds = best <= n && st.l0 <= (std::size_t{1} << (2 * best));
    r.add("sparsity_vs_depth", std::to_string(st.l0), "4^" + std::to_string(best), holds);
  }

  // Folds and single-variable restrictions never increase l0 or l1.
  {
    Sweep fold_sweep;
    Sweep split_sweep;
    for (Mask t : directions(n)) {
      for (unsigned b = 0; b < 2; ++b) {
        const auto after = spectral_stats(fold(pm, t, b));
        if (after.l0 > pst.l0 || after.l1_num > pst.l1_num) {
          fold_sweep.fail_at("t=" + to_bitstring(t, n) + ",b=" + std::to_string(b));
        }
      }
      const auto split = spectrum_split(pm, t);
      const auto a = spectral_stats(split.in_perp);
      const auto b = spectral_stats(split.off_perp);
      if (a.l0 + b.l0 != pst.l0 || a.l1_num + b.l1_num != pst.l1_num) {
        split_sweep.fail_at("t=" + to_bitstring(t, n));
      }
    }
    r.add("fold_monotone", fold_sweep.detail, "no increase", fold_sweep.holds);
    r.add("split_conservation", split_sweep.detail, "exact", split_sweep.holds);

    Sweep sub_sweep;
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned b = 0; b < 2; ++b) {
        const auto after = spectral_stats(wht(restrict_hyperplane(f, Mask{1} << i, b)));
        // The restriction lives over 2^(n-1); rescale to compare.
        if (after.l0 > st.l0 || 2 * after.l1_num > st.l1_num) {
          sub_sweep.fail_at("x" + std::to_string(i + 1) + "=" + std::to_string(b));
        }
      }
    }
    r.add("restriction_monotone", sub_sweep.detail, "no increase", sub_sweep.holds);
  }

  // Invertible change of variables.
  {
    const BooleanFunction g = apply_linear(f, random_invertible(n, 7));
    const auto gs = spectral_stats(wht(g));
    const bool holds = gs.l0 == st.l0 && gs.l1_num == st.l1_num && gs.granularity == st.granularity &&
                       deg2(g) == deg2(f);
    r.add("linear_invariance", std::to_string(gs.l0) + "," + dyadic_string(gs.l1_num, k),
          std::to_string(st.l0) + "," + dyadic_string(st.l1_num, k), holds);
  }

  // Derivatives: degree drops and l1((D_t f)^pm) <= l1(f^pm)^2.
  {
    const int d = deg2(f);
    Sweep degree_sweep;
    Sweep norm_sweep;
    const std::int64_t bound = checked_mul(pst.l1_num, pst.l1_num);
    for (Mask t : directions(n)) {
      const BooleanFunction dt = derivative(f, t);
      if (d > 0 && deg2(dt) >= d) degree_sweep.fail_at("t=" + to_bitstring(t, n));
      const std::int64_t l1 = spectral_stats(pm_spectrum(dt)).l1_num;
      if (checked_mul(l1, den) > bound) norm_sweep.fail_at("t=" + to_bitstring(t, n));
    }
    r.add("derivative_degree", degree_sweep.detail, "deg2 < " + std::to_string(d), degree_sweep.holds);
    r.add("derivative_norm", norm_sweep.detail, "<= " + dyadic_string(bound, 2 * k), norm_sweep.holds);
  }

  // Chang at the smallest nonzero magnitude.
  if (f.ones() > 0) {
    std::int64_t eps = 0;
    for (const auto& c : s.terms()) {
      const std::int64_t m = c.num < 0 ? -c.num : c.num;
      if (eps == 0 || m < eps) eps = m;
    }
    const auto chang = chang_check(f, eps);
    r.add("chang", std::to_string(chang.span), real(chang.bound), chang.holds);
  }

  for (Range range : {Range::zero_one, Range::plus_minus}) {
    for (double eta : {0.25, 0.5, 0.75, 1.0}) {
      const auto h = hypercontractivity_check(f, eta, range);
      r.add(std::string(range == Range::zero_one ? "hypercontractivity" : "hypercontractivity_pm") + "(" +
                real(eta) + ")",
            real(h.lhs), real(h.rhs), h.holds);
    }
  }
  return std::move(r.get());
}

ChangResult chang_check(const BooleanFunction& f, std::int64_t eps_num) {
  if (f.ones() == 0) fail(ErrorCode::zero_density, "density of ones is zero");
  if (eps_num <= 0) fail(ErrorCode::invalid_argument, "epsilon must be positive");
  const Spectrum s = wht(f);
  std::vector<Mask> large;
  for (const auto& c : s.terms()) {
    if ((c.num < 0 ? -c.num : c.num) >= eps_num) large.push_back(c.mask);
  }
  ChangResult out;
  out.span = span_dim(large);
  const double rho = static_cast<double>(f.ones()) / static_cast<double>(f.size());
  const double eps = std::ldexp(static_cast<double>(eps_num), -static_cast<int>(f.arity()));
  out.bound = 2.0 * (rho / eps) * (rho / eps) * std::log(1.0 / rho);
  // Constant 1 has bound 0 and an empty large spectrum outside 0.
  out.holds = static_cast<double>(out.span) + 1e-12 < out.bound || (f.ones() == f.size() && out.span == 0);
  return out;
}

double bound_B(int d, double m, BoundBConfig config) {
  if (d < 3) fail(ErrorCode::invalid_degree, "B_d needs d >= 3, got " + std::to_string(d));
  if (!(m >= 1.0)) fail(ErrorCode::invalid_degree, "B_d needs m >= 1");
  double value = 0.0;
  if (d == 3) {
    value = config.c3 * std::log2(m + 1.0) + config.b3;
  } else {
    value = bound_B(d - 1, m * m, config) * std::log2(m) + bound_B(d - 1, m, config) + 1.0;
  }
  if (!std::isfinite(value)) fail(ErrorCode::overflow, "B_d is not representable");
  return value;
}

double bound_B_leading(int d, double m) {
  if (d < 3) fail(ErrorCode::invalid_degree, "B_d needs d >= 3, got " + std::to_string(d));
  if (!(m >= 1.0)) fail(ErrorCode::invalid_degree, "B_d needs m >= 1");
  return std::ldexp(std::pow(std::log2(m), d - 2), (d - 2) * (d - 3) / 2);
}

}  // namespace pdtkit
