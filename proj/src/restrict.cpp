#include "pdtkit/restrict.hpp"

#include <numeric>
#include <unordered_map>

#include "pdtkit/error.hpp"
#include "pdtkit/gf2.hpp"

namespace pdtkit {
namespace {

void require_direction(Mask t, unsigned n, const char* op) {
  if (t == 0) fail(ErrorCode::zero_direction, std::string(op) + ": direction must be nonzero");
  if ((t & ~full_mask(n)) != 0) {
    fail(ErrorCode::dimension_mismatch, std::string(op) + ": direction outside dimension " +
                                            std::to_string(n));
  }
}

}  // namespace

std::string to_string(const AffineConstraint& c, unsigned n) {
  return to_bitstring(c.mask, n) + "=" + std::to_string(c.bit);
}

AffineChart::AffineChart(unsigned n) : n_(n), coords_(n) {
  std::iota(coords_.begin(), coords_.end(), 0u);
}

Mask AffineChart::lift(Mask local) const noexcept {
  Mask out = 0;
  for (std::size_t j = 0; j < coords_.size(); ++j) {
    if ((local >> j) & 1u) out |= Mask{1} << coords_[j];
  }
  return out;
}

std::pair<Mask, unsigned> AffineChart::localize(Mask original) const noexcept {
  Mask m = original;
  unsigned offset = 0;
  for (const auto& step : steps_) {
    if ((m >> step.pivot) & 1u) {
      m ^= step.t;
      offset ^= step.b;
    }
    m = remove_bit(m, step.pivot);
  }
  return {m, offset};
}

AffineChart AffineChart::restricted(Mask local_t, unsigned b) const {
  require_direction(local_t, dimension(), "restrict");
  AffineChart out = *this;
  const unsigned pivot = lowest_bit(local_t);
  out.constraints_.push_back({lift(local_t), b & 1u});
  out.steps_.push_back({pivot, local_t, b & 1u});
  out.coords_.erase(out.coords_.begin() + pivot);
  return out;
}

BooleanFunction restrict_hyperplane(const BooleanFunction& f, Mask t, unsigned b) {
  require_direction(t, f.arity(), "restrict");
  const unsigned pivot = lowest_bit(t);
  const unsigned m = f.arity() - 1;
  std::vector<std::uint8_t> table(std::size_t{1} << m);
  for (std::size_t y = 0; y < table.size(); ++y) {
    Mask x = insert_zero(static_cast<Mask>(y), pivot);
    x |= Mask((b ^ dot(t, x)) & 1u) << pivot;
    table[y] = f(x) ? 1 : 0;
  }
  return BooleanFunction(m, std::move(table));
}

Spectrum fold(const Spectrum& spectrum, Mask t, unsigned b) {
  require_direction(t, spectrum.arity(), "fold");
  const unsigned pivot = lowest_bit(t);
  std::vector<Coefficient> terms;
  terms.reserve(spectrum.sparsity());
  for (const auto& c : spectrum.terms()) {
    if ((c.mask >> pivot) & 1u) {
      terms.push_back({remove_bit(c.mask ^ t, pivot), (b & 1u) ? -c.num : c.num});
    } else {
      terms.push_back({remove_bit(c.mask, pivot), c.num});
    }
  }
  return Spectrum(spectrum.arity() - 1, spectrum.denom_exp(), std::move(terms));
}

namespace {

template <class Object, class Step>
Object restrict_generic(Object object, unsigned n, std::span<const AffineConstraint> constraints,
                        Step&& step) {
  AffineChart chart(n);
  for (const auto& c : constraints) {
    if (c.mask == 0) fail(ErrorCode::dependent_constraints, "constraint mask must be nonzero");
    if ((c.mask & ~full_mask(n)) != 0) {
      fail(ErrorCode::dimension_mismatch, "constraint mask outside dimension " + std::to_string(n));
    }
    const auto [local, offset] = chart.localize(c.mask);
    if (local == 0) fail(ErrorCode::dependent_constraints, "constraint masks are linearly dependent");
    const unsigned b = (c.bit ^ offset) & 1u;
    object = step(object, local, b);
    chart = chart.restricted(local, b);
  }
  return object;
}

}  // namespace

BooleanFunction restrict_affine(const BooleanFunction& f, std::span<const AffineConstraint> constraints) {
  return restrict_generic(f, f.arity(), constraints, [](const BooleanFunction& g, Mask t, unsigned b) {
    return restrict_hyperplane(g, t, b);
  });
}

Spectrum restrict_spectrum(const Spectrum& spectrum, std::span<const AffineConstraint> constraints) {
  return restrict_generic(spectrum, spectrum.arity(), constraints,
                          [](const Spectrum& s, Mask t, unsigned b) { return fold(s, t, b); });
}

BooleanFunction derivative(const BooleanFunction& f, Mask t) {
  require_direction(t, f.arity(), "derivative");
  std::vector<std::uint8_t> table(f.size());
  for (std::size_t x = 0; x < table.size(); ++x) {
    table[x] = (f(static_cast<Mask>(x)) != f(static_cast<Mask>(x) ^ t)) ? 1 : 0;
  }
  return BooleanFunction(f.arity(), std::move(table));
}

SpectrumSplit spectrum_split(const Spectrum& spectrum, Mask t) {
  require_direction(t, spectrum.arity(), "spectrum_split");
  std::vector<Coefficient> in, off;
  for (const auto& c : spectrum.terms()) (dot(c.mask, t) ? off : in).push_back(c);
  return {Spectrum(spectrum.arity(), spectrum.denom_exp(), std::move(in)),
          Spectrum(spectrum.arity(), spectrum.denom_exp(), std::move(off))};
}

bool equivalent(const Spectrum& a, const Spectrum& b) {
  if (a.arity() != b.arity() || a.sparsity() != b.sparsity()) return false;
  const int k = std::max(a.denom_exp(), b.denom_exp());
  const std::int64_t scale_a = std::int64_t{1} << (k - a.denom_exp());
  const std::int64_t scale_b = std::int64_t{1} << (k - b.denom_exp());
  for (std::size_t i = 0; i < a.sparsity(); ++i) {
    const auto& x = a.terms()[i];
    const auto& y = b.terms()[i];
    if (x.mask != y.mask || checked_mul(x.num, scale_a) != checked_mul(y.num, scale_b)) return false;
  }
  return true;
}

std::int64_t l1_at_denominator(const Spectrum& spectrum, int denom_exp) {
  if (denom_exp < spectrum.denom_exp() || denom_exp - spectrum.denom_exp() > 62) {
    fail(ErrorCode::invalid_argument, "cannot rescale to a smaller denominator");
  }
  return checked_mul(spectral_stats(spectrum).l1_num, std::int64_t{1} << (denom_exp - spectrum.denom_exp()));
}

}  // namespace pdtkit
