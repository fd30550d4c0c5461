#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pdtkit/bits.hpp"
#include "pdtkit/core.hpp"

namespace pdtkit {

/// The affine constraint <mask, x> = bit.
struct AffineConstraint {
  Mask mask = 0;
  unsigned bit = 0;

  friend bool operator==(const AffineConstraint&, const AffineConstraint&) = default;
};

/// "mask=bit", e.g. "1000=0".
std::string to_string(const AffineConstraint& c, unsigned n);

/// Coordinates on an affine subspace H reached by successive hyperplane
/// restrictions. Restricting by <t,y> = b eliminates the coordinate at the
/// lowest set bit of t (the first 1 in the bitstring), solving for it in terms
/// of the others; every surviving coordinate is one of the original x_i. The
/// quotient basis is therefore the completion of the lowest-index pivoted basis
/// of t-perp, and local masks lift to the original space by inserting zeros.
class AffineChart {
 public:
  AffineChart() = default;
  explicit AffineChart(unsigned n);

  unsigned ambient() const noexcept { return n_; }
  unsigned dimension() const noexcept { return static_cast<unsigned>(coords_.size()); }

  /// Linear form on the chart expressed in original coordinates; on H,
  /// <lift(m), x> = <m, y>.
  Mask lift(Mask local) const noexcept;

  /// Rewrites an original linear form on H: <m, x> = <local, y> xor offset.
  std::pair<Mask, unsigned> localize(Mask original) const noexcept;

  /// Chart of H intersected with <t, y> = b (t given in local coordinates).
  AffineChart restricted(Mask local_t, unsigned b) const;

  /// Constraints cutting out H, in original coordinates, in application order.
  std::span<const AffineConstraint> constraints() const noexcept { return constraints_; }
  /// Original index of each local coordinate.
  std::span<const unsigned> coordinates() const noexcept { return coords_; }

 private:
  struct Step {
    unsigned pivot;
    Mask t;
    unsigned b;
  };

  unsigned n_ = 0;
  std::vector<unsigned> coords_;
  std::vector<Step> steps_;
  std::vector<AffineConstraint> constraints_;
};

/// Restriction of f to <t, x> = b in the chart convention above.
BooleanFunction restrict_hyperplane(const BooleanFunction& f, Mask t, unsigned b);

/// Folding of a spectrum along t: one coefficient num(s) + (-1)^b num(s+t) per
/// unordered pair, s being the lexicographically smaller member. The
/// denominator is kept.
Spectrum fold(const Spectrum& spectrum, Mask t, unsigned b);

/// Successive restrictions; constraint masks are in original coordinates and
/// must be independent. A full-rank constraint set yields an arity-0 function.
BooleanFunction restrict_affine(const BooleanFunction& f, std::span<const AffineConstraint> constraints);

/// The spectral counterpart of restrict_affine: iterated folds with the same
/// chart and branch bits.
Spectrum restrict_spectrum(const Spectrum& spectrum, std::span<const AffineConstraint> constraints);

/// Delta_t f(x) = f(x) + f(x + t).
BooleanFunction derivative(const BooleanFunction& f, Mask t);

struct SpectrumSplit {
  Spectrum in_perp;   // <s, t> = 0
  Spectrum off_perp;  // <s, t> = 1
};

SpectrumSplit spectrum_split(const Spectrum& spectrum, Mask t);

/// Value equality of two spectra over possibly different denominators.
bool equivalent(const Spectrum& a, const Spectrum& b);

/// Numerator sum rescaled to the denominator 2^denom_exp (denom_exp must be
/// at least the spectrum's own).
std::int64_t l1_at_denominator(const Spectrum& spectrum, int denom_exp);

}  // namespace pdtkit
