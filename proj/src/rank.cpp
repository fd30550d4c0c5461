#include "pdtkit/rank.hpp"

#include <array>
#include <optional>

#include "pdtkit/error.hpp"

namespace pdtkit {
namespace {

constexpr std::array<std::uint64_t, 6> kLowHalf = {
    0x5555555555555555ull, 0x3333333333333333ull, 0x0F0F0F0F0F0F0F0Full,
    0x00FF00FF00FF00FFull, 0x0000FFFF0000FFFFull, 0x00000000FFFFFFFFull,
};

// kHeavy[r]: bit positions b in [0, 64) with popcount(b) >= r.
constexpr std::array<std::uint64_t, 8> make_heavy() {
  std::array<std::uint64_t, 8> out{};
  for (unsigned r = 0; r < 8; ++r) {
    for (unsigned b = 0; b < 64; ++b) {
      if (static_cast<unsigned>(std::popcount(b)) >= r) out[r] |= std::uint64_t{1} << b;
    }
  }
  return out;
}
constexpr auto kHeavy = make_heavy();

// Degree test for restrictions of one function onto candidate subspaces.
class DegreeProbe {
 public:
  DegreeProbe(const BooleanFunction& f, int degree) : f_(f), degree_(degree) {}

  /// True when f restricted to {shift + span(basis)} has deg2 < degree.
  bool drops(Mask shift, std::span<const Mask> basis) {
    const unsigned m = static_cast<unsigned>(basis.size());
    if (static_cast<int>(m) < degree_) return true;
    const std::size_t points = std::size_t{1} << m;
    words_.assign((points + 63) / 64, 0);
    Mask x = shift;
    Mask previous = 0;
    for (std::size_t i = 0; i < points; ++i) {
      const Mask gray = static_cast<Mask>(i ^ (i >> 1));
      if (i > 0) x ^= basis[lowest_bit(gray ^ previous)];
      previous = gray;
      if (f_(x)) words_[gray >> 6] |= std::uint64_t{1} << (gray & 63);
    }
    for (unsigned h = 0; h < 6 && h < m; ++h) {
      for (auto& w : words_) w ^= (w & kLowHalf[h]) << (1u << h);
    }
    for (std::size_t h = 1; h < words_.size(); h <<= 1) {
      for (std::size_t i = 0; i < words_.size(); i += 2 * h) {
        for (std::size_t j = i; j < i + h; ++j) words_[j + h] ^= words_[j];
      }
    }
    for (std::size_t w = 0; w < words_.size(); ++w) {
      const int need = degree_ - std::popcount(w);
      if (need > 6) continue;
      const std::uint64_t heavy = need <= 0 ? ~std::uint64_t{0} : kHeavy[static_cast<unsigned>(need)];
      if ((words_[w] & heavy) != 0) return false;
    }
    return true;
  }

 private:
  const BooleanFunction& f_;
  int degree_;
  std::vector<std::uint64_t> words_;
};

// Enumerates k-dimensional constraint spaces by reduced row echelon bases and
// hands each (rows, complement basis, pivot shifts) to a visitor until it
// returns true.
class SubspaceSearch {
 public:
  SubspaceSearch(unsigned n, unsigned k) : n_(n), k_(k), rows_(k), pivots_(k) {}

  template <class Visit>
  bool run(Visit&& visit) {
    return extend(0, visit);
  }

  std::span<const Mask> rows() const noexcept { return rows_; }
  std::span<const unsigned> pivots() const noexcept { return pivots_; }

  /// Basis of the common kernel of the current rows.
  std::vector<Mask> kernel_basis() const {
    std::vector<Mask> basis;
    Mask pivot_set = 0;
    for (unsigned p : pivots_) pivot_set |= Mask{1} << p;
    for (unsigned j = 0; j < n_; ++j) {
      if ((pivot_set >> j) & 1u) continue;
      Mask v = Mask{1} << j;
      for (unsigned i = 0; i < k_; ++i) {
        if ((rows_[i] >> j) & 1u) v |= Mask{1} << pivots_[i];
      }
      basis.push_back(v);
    }
    return basis;
  }

  /// Point with <row_i, x> = bit i of `bits`.
  Mask shift_point(Mask bits) const noexcept {
    Mask x = 0;
    for (unsigned i = 0; i < k_; ++i) {
      if ((bits >> i) & 1u) x |= Mask{1} << pivots_[i];
    }
    return x;
  }

 private:
  template <class Visit>
  bool extend(unsigned level, Visit& visit) {
    if (level == k_) return visit(*this);
    const unsigned min_pivot = level == 0 ? 0 : pivots_[level - 1] + 1;
    for (unsigned p = min_pivot; p + (k_ - level) <= n_; ++p) {
      bool clash = false;
      for (unsigned i = 0; i < level; ++i) clash |= ((rows_[i] >> p) & 1u) != 0;
      if (clash) continue;
      const Mask tails = full_mask(n_ - p - 1);
      for (Mask h = 0;; ++h) {
        rows_[level] = (Mask{1} << p) | (h << (p + 1));
        pivots_[level] = p;
        if (extend(level + 1, visit)) return true;
        if (h == tails) break;
      }
    }
    return false;
  }

  unsigned n_;
  unsigned k_;
  std::vector<Mask> rows_;
  std::vector<unsigned> pivots_;
};

int nonconstant_degree(const BooleanFunction& f) {
  const int d = deg2(f);
  if (d == 0) fail(ErrorCode::constant_input, "polynomial rank is undefined for constant functions");
  return d;
}

}  // namespace

RankResult rank_exact(const BooleanFunction& f, unsigned max_codim, RankOptions options) {
  const int d = nonconstant_degree(f);
  const unsigned n = f.arity();
  DegreeProbe probe(f, d);
  std::size_t examined = 0;
  bool exhausted = false;
  for (unsigned k = 1; k <= std::min(max_codim, n) && !exhausted; ++k) {
    SubspaceSearch search(n, k);
    std::optional<RankResult> found;
    search.run([&](const SubspaceSearch& s) {
      if (options.max_candidates != 0 && ++examined > options.max_candidates) {
        exhausted = true;
        return true;
      }
      const auto basis = s.kernel_basis();
      const Mask shifts = options.exhaustive_shifts ? full_mask(k) : 0;
      for (Mask bits = 0;; ++bits) {
        if (probe.drops(s.shift_point(bits), basis)) {
          RankResult r{k, {}};
          for (unsigned i = 0; i < k; ++i) r.witness.push_back({s.rows()[i], (bits >> i) & 1u});
          found = std::move(r);
          return true;
        }
        if (bits == shifts) break;
      }
      return false;
    });
    if (found) return *found;
  }
  if (exhausted) {
    fail(ErrorCode::not_found,
         "search budget of " + std::to_string(options.max_candidates) + " subspaces exhausted");
  }
  fail(ErrorCode::not_found, "no degree-reducing affine subspace of codimension <= " +
                                 std::to_string(std::min(max_codim, n)));
}

std::vector<Mask> degree_reducing_subspace(const BooleanFunction& f, unsigned max_codim,
                                           std::size_t max_candidates) {
  const int d = nonconstant_degree(f);
  const unsigned n = f.arity();
  DegreeProbe probe(f, d);
  std::size_t examined = 0;
  bool exhausted = false;
  for (unsigned k = 1; k <= std::min(max_codim, n) && !exhausted; ++k) {
    SubspaceSearch search(n, k);
    std::vector<Mask> found;
    search.run([&](const SubspaceSearch& s) {
      if (max_candidates != 0 && ++examined > max_candidates) {
        exhausted = true;
        return true;
      }
      const auto basis = s.kernel_basis();
      for (Mask bits = 0; bits <= full_mask(k); ++bits) {
        if (!probe.drops(s.shift_point(bits), basis)) return false;
      }
      found.assign(s.rows().begin(), s.rows().end());
      return true;
    });
    if (!found.empty()) return found;
  }
  if (exhausted) {
    fail(ErrorCode::not_found, "search budget of " + std::to_string(max_candidates) + " subspaces exhausted");
  }
  fail(ErrorCode::not_found, "no degree-reducing linear subspace of codimension <= " +
                                 std::to_string(std::min(max_codim, n)));
}

}  // namespace pdtkit
