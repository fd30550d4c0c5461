#include "pdtkit/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "pdtkit/error.hpp"

namespace pdtkit {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) fail(ErrorCode::overflow, "numerator overflow in addition");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) fail(ErrorCode::overflow, "numerator overflow in product");
  return out;
}

BooleanFunction::BooleanFunction(unsigned n, std::vector<std::uint8_t> table)
    : n_(n), table_(std::move(table)) {
  if (n > kMaxVars) {
    fail(ErrorCode::too_large, "arity " + std::to_string(n) + " exceeds n_max = " +
                                   std::to_string(kMaxVars));
  }
  if (table_.size() != (std::size_t{1} << n)) {
    fail(ErrorCode::invalid_argument, "truth table length " + std::to_string(table_.size()) +
                                          " is not 2^" + std::to_string(n));
  }
  for (auto v : table_) {
    if (v > 1) fail(ErrorCode::not_boolean, "truth table entries must be 0 or 1");
  }
}

BooleanFunction BooleanFunction::constant(unsigned n, bool value) {
  if (n > kMaxVars) fail(ErrorCode::too_large, "arity exceeds n_max");
  return BooleanFunction(n, std::vector<std::uint8_t>(std::size_t{1} << n, value ? 1 : 0));
}

std::size_t BooleanFunction::ones() const noexcept {
  return static_cast<std::size_t>(std::count(table_.begin(), table_.end(), std::uint8_t{1}));
}

bool BooleanFunction::is_constant() const noexcept {
  return std::all_of(table_.begin(), table_.end(), [&](auto v) { return v == table_[0]; });
}

Spectrum::Spectrum(unsigned n, int denom_exp, std::vector<Coefficient> terms)
    : n_(n), denom_exp_(denom_exp) {
  const Mask limit = full_mask(n);
  std::sort(terms.begin(), terms.end(),
            [](const Coefficient& a, const Coefficient& b) { return a.mask < b.mask; });
  for (const auto& c : terms) {
    if ((c.mask & ~limit) != 0) {
      fail(ErrorCode::dimension_mismatch, "spectrum mask outside dimension " + std::to_string(n));
    }
    if (!terms_.empty() && terms_.back().mask == c.mask) {
      terms_.back().num = checked_add(terms_.back().num, c.num);
    } else {
      terms_.push_back(c);
    }
  }
  std::erase_if(terms_, [](const Coefficient& c) { return c.num == 0; });
}

std::int64_t Spectrum::at(Mask s) const noexcept {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), s,
                             [](const Coefficient& c, Mask m) { return c.mask < m; });
  return (it != terms_.end() && it->mask == s) ? it->num : 0;
}

bool Spectrum::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mask == 0);
}

int Anf::degree() const noexcept {
  unsigned d = 0;
  for (Mask m : monomials) d = std::max(d, weight(m));
  return static_cast<int>(d);
}

Spectrum wht(const BooleanFunction& f) {
  std::vector<std::int64_t> a(f.table().begin(), f.table().end());
  for (std::size_t h = 1; h < a.size(); h <<= 1) {
    for (std::size_t i = 0; i < a.size(); i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const auto u = a[j];
        const auto v = a[j + h];
        a[j] = u + v;
        a[j + h] = u - v;
      }
    }
  }
  std::vector<Coefficient> terms;
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (a[s] != 0) terms.push_back({static_cast<Mask>(s), a[s]});
  }
  return Spectrum(f.arity(), static_cast<int>(f.arity()), std::move(terms));
}

BooleanFunction inverse_wht(const Spectrum& spectrum) {
  const unsigned n = spectrum.arity();
  if (n > kMaxVars) fail(ErrorCode::too_large, "arity exceeds n_max");
  if (spectrum.denom_exp() < 0 || spectrum.denom_exp() > 62) {
    fail(ErrorCode::not_boolean, "denominator exponent out of range for a Boolean function");
  }
  std::vector<std::int64_t> a(std::size_t{1} << n, 0);
  for (const auto& c : spectrum.terms()) a[c.mask] = c.num;
  for (std::size_t h = 1; h < a.size(); h <<= 1) {
    for (std::size_t i = 0; i < a.size(); i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const auto u = a[j];
        const auto v = a[j + h];
        a[j] = checked_add(u, v);
        a[j + h] = checked_add(u, -v);
      }
    }
  }
  const std::int64_t one = std::int64_t{1} << spectrum.denom_exp();
  std::vector<std::uint8_t> table(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (a[x] == 0) {
      table[x] = 0;
    } else if (a[x] == one) {
      table[x] = 1;
    } else {
      fail(ErrorCode::not_boolean, "value at x = " + to_bitstring(static_cast<Mask>(x), n) +
                                       " is " + dyadic_string(a[x], spectrum.denom_exp()));
    }
  }
  return BooleanFunction(n, std::move(table));
}

Spectrum to_pm_spectrum(const Spectrum& spectrum) {
  if (spectrum.denom_exp() < 0 || spectrum.denom_exp() > 61) {
    fail(ErrorCode::overflow, "denominator exponent out of range");
  }
  std::vector<Coefficient> terms;
  terms.reserve(spectrum.sparsity() + 1);
  terms.push_back({0, std::int64_t{1} << spectrum.denom_exp()});
  for (const auto& c : spectrum.terms()) terms.push_back({c.mask, checked_mul(-2, c.num)});
  return Spectrum(spectrum.arity(), spectrum.denom_exp(), std::move(terms));
}

Spectrum pm_spectrum(const BooleanFunction& f) { return to_pm_spectrum(wht(f)); }

Anf anf_of(const BooleanFunction& f) {
  std::vector<std::uint8_t> a(f.table().begin(), f.table().end());
  for (std::size_t h = 1; h < a.size(); h <<= 1) {
    for (std::size_t i = 0; i < a.size(); i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) a[j + h] ^= a[j];
    }
  }
  Anf anf{f.arity(), {}};
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (a[m]) anf.monomials.push_back(static_cast<Mask>(m));
  }
  return anf;
}

BooleanFunction from_anf(const Anf& anf) {
  if (anf.n > kMaxVars) fail(ErrorCode::too_large, "arity exceeds n_max");
  std::vector<std::uint8_t> a(std::size_t{1} << anf.n, 0);
  for (Mask m : anf.monomials) {
    if ((m & ~full_mask(anf.n)) != 0) fail(ErrorCode::dimension_mismatch, "monomial outside arity");
    a[m] ^= 1;
  }
  // The Moebius transform over GF(2) is an involution.
  for (std::size_t h = 1; h < a.size(); h <<= 1) {
    for (std::size_t i = 0; i < a.size(); i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) a[j + h] ^= a[j];
    }
  }
  return BooleanFunction(anf.n, std::move(a));
}

int deg2(const BooleanFunction& f) { return anf_of(f).degree(); }

SpectralStats spectral_stats(const Spectrum& spectrum) {
  SpectralStats stats;
  stats.l0 = spectrum.sparsity();
  std::uint64_t g = 0;
  for (const auto& c : spectrum.terms()) {
    const std::int64_t mag = c.num < 0 ? checked_mul(-1, c.num) : c.num;
    stats.l1_num = checked_add(stats.l1_num, mag);
    stats.linf_num = std::max(stats.linf_num, mag);
    g = std::gcd(g, static_cast<std::uint64_t>(mag));
  }
  stats.granularity = g == 0 ? 0 : spectrum.denom_exp() - std::countr_zero(g);
  return stats;
}

Spectrum pointwise_product(const Spectrum& f, const Spectrum& g) {
  if (f.arity() != g.arity()) {
    fail(ErrorCode::dimension_mismatch, "pointwise_product of spectra over " +
                                            std::to_string(f.arity()) + " and " +
                                            std::to_string(g.arity()) + " variables");
  }
  std::unordered_map<Mask, std::int64_t> acc;
  acc.reserve(std::min<std::size_t>(f.sparsity() * g.sparsity(), std::size_t{1} << f.arity()));
  for (const auto& a : f.terms()) {
    for (const auto& b : g.terms()) {
      auto& slot = acc[a.mask ^ b.mask];
      slot = checked_add(slot, checked_mul(a.num, b.num));
    }
  }
  std::vector<Coefficient> terms;
  terms.reserve(acc.size());
  for (const auto& [mask, num] : acc) terms.push_back({mask, num});
  return Spectrum(f.arity(), f.denom_exp() + g.denom_exp(), std::move(terms));
}

HypercontractivityResult hypercontractivity_check(const BooleanFunction& f, double eta,
                                                  Range range) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    fail(ErrorCode::invalid_eta, "eta must lie in (0, 1], got " + std::to_string(eta));
  }
  const Spectrum spectrum = range == Range::zero_one ? wht(f) : pm_spectrum(f);
  double energy = 0.0;
  for (const auto& c : spectrum.terms()) {
    const double value = std::ldexp(static_cast<double>(c.num), -spectrum.denom_exp()) *
                         std::pow(eta, static_cast<double>(weight(c.mask)));
    energy += value * value;
  }
  const double p = 1.0 + eta * eta;
  double moment = 0.0;
  for (auto v : f.table()) {
    const double value = range == Range::zero_one ? double(v) : 1.0 - 2.0 * double(v);
    moment += std::pow(std::fabs(value), p);
  }
  moment /= static_cast<double>(f.size());

  HypercontractivityResult result;
  result.lhs = std::sqrt(energy);
  result.rhs = std::pow(moment, 1.0 / p);
  result.holds = result.lhs <= result.rhs + 1e-9;
  return result;
}

std::string dyadic_string(std::int64_t num, int denom_exp) {
  int exp = denom_exp;
  while (exp > 0 && num % 2 == 0) {
    num /= 2;
    --exp;
  }
  if (exp < 0) {
    return std::to_string(checked_mul(num, std::int64_t{1} << -exp)) + "/1";
  }
  if (exp > 62) fail(ErrorCode::overflow, "denominator does not fit in 64 bits");
  return std::to_string(num) + "/" + std::to_string(std::int64_t{1} << exp);
}

}  // namespace pdtkit
