#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pdtkit/bits.hpp"

namespace pdtkit {

/// Truth table of f : {0,1}^n -> {0,1}. Entry x has x1 as its least
/// significant bit. n = 0 is allowed and denotes a single point.
class BooleanFunction {
 public:
  BooleanFunction() : table_(1, 0) {}
  BooleanFunction(unsigned n, std::vector<std::uint8_t> table);

  static BooleanFunction constant(unsigned n, bool value);

  template <class Pred>
  static BooleanFunction from_predicate(unsigned n, Pred&& pred) {
    std::vector<std::uint8_t> table(std::size_t{1} << n);
    for (std::size_t x = 0; x < table.size(); ++x) {
      table[x] = pred(static_cast<Mask>(x)) ? 1 : 0;
    }
    return BooleanFunction(n, std::move(table));
  }

  unsigned arity() const noexcept { return n_; }
  std::size_t size() const noexcept { return table_.size(); }
  bool operator()(Mask x) const { return table_[x] != 0; }
  std::span<const std::uint8_t> table() const noexcept { return table_; }

  /// Number of ones, |f^{-1}(1)|.
  std::size_t ones() const noexcept;
  bool is_constant() const noexcept;

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

 private:
  unsigned n_ = 0;
  std::vector<std::uint8_t> table_;
};

struct Coefficient {
  Mask mask = 0;
  std::int64_t num = 0;

  friend bool operator==(const Coefficient&, const Coefficient&) = default;
};

/// Exact Fourier spectrum: coefficient at s is num(s) / 2^denom_exp. Only
/// nonzero numerators are stored, ordered by mask value.
class Spectrum {
 public:
  Spectrum() = default;
  /// Duplicate masks are summed; zero results are dropped.
  Spectrum(unsigned n, int denom_exp, std::vector<Coefficient> terms);

  unsigned arity() const noexcept { return n_; }
  int denom_exp() const noexcept { return denom_exp_; }
  std::span<const Coefficient> terms() const noexcept { return terms_; }
  std::size_t sparsity() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  std::int64_t at(Mask s) const noexcept;
  /// True for the zero spectrum and for spectra supported on {0}.
  bool is_constant() const noexcept;

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  unsigned n_ = 0;
  int denom_exp_ = 0;
  std::vector<Coefficient> terms_;
};

/// GF(2) algebraic normal form; monomials sorted by mask value.
struct Anf {
  unsigned n = 0;
  std::vector<Mask> monomials;

  int degree() const noexcept;
  friend bool operator==(const Anf&, const Anf&) = default;
};

struct SpectralStats {
  std::size_t l0 = 0;
  std::int64_t l1_num = 0;
  std::int64_t linf_num = 0;
  int granularity = 0;
};

enum class Range { zero_one, plus_minus };

struct HypercontractivityResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

Spectrum wht(const BooleanFunction& f);
/// Throws not_boolean when some reconstructed value is outside {0,1}.
BooleanFunction inverse_wht(const Spectrum& spectrum);
/// Spectrum of f^pm = 1 - 2f, same denominator.
Spectrum to_pm_spectrum(const Spectrum& spectrum);
/// wht followed by to_pm_spectrum.
Spectrum pm_spectrum(const BooleanFunction& f);

Anf anf_of(const BooleanFunction& f);
BooleanFunction from_anf(const Anf& anf);
int deg2(const BooleanFunction& f);

SpectralStats spectral_stats(const Spectrum& spectrum);

/// Convolution of spectra: the spectrum of the pointwise product.
Spectrum pointwise_product(const Spectrum& f, const Spectrum& g);

HypercontractivityResult hypercontractivity_check(const BooleanFunction& f, double eta,
                                                  Range range = Range::zero_one);

/// "num/den" in lowest terms for num / 2^denom_exp.
std::string dyadic_string(std::int64_t num, int denom_exp);

// Overflow-checked arithmetic on numerators.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace pdtkit
