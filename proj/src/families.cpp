#include "pdtkit/families.hpp"

#include <charconv>
#include <random>

#include "pdtkit/error.hpp"
#include "pdtkit/gf2.hpp"

namespace pdtkit {

const char* family_name(FamilyKind kind) noexcept {
  switch (kind) {
    case FamilyKind::bent_ip: return "bent_ip";
    case FamilyKind::and_: return "and";
    case FamilyKind::or_: return "or";
    case FamilyKind::parity: return "parity";
    case FamilyKind::majority: return "majority";
    case FamilyKind::symmetric: return "symmetric";
    case FamilyKind::random_poly: return "random_poly";
    case FamilyKind::affine_indicator: return "affine_indicator";
  }
  return "?";
}

namespace {

[[noreturn]] void invalid(const std::string& what) { fail(ErrorCode::invalid_spec, what); }

void check_arity(unsigned n, unsigned min_n = 1) {
  if (n < min_n || n > kMaxVars) {
    invalid("arity must lie in [" + std::to_string(min_n) + ", " + std::to_string(kMaxVars) + "], got " +
            std::to_string(n));
  }
}

}  // namespace

BooleanFunction generate(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::bent_ip: {
      check_arity(spec.n, 2);
      if (spec.n % 2 != 0) invalid("bent_ip needs an even number of variables, got " + std::to_string(spec.n));
      return BooleanFunction::from_predicate(spec.n, [n = spec.n](Mask x) {
        unsigned v = 0;
        for (unsigned i = 0; i < n; i += 2) v ^= ((x >> i) & (x >> (i + 1))) & 1u;
        return v != 0;
      });
    }
    case FamilyKind::and_:
      check_arity(spec.n);
      return BooleanFunction::from_predicate(spec.n, [full = full_mask(spec.n)](Mask x) { return x == full; });
    case FamilyKind::or_:
      check_arity(spec.n);
      return BooleanFunction::from_predicate(spec.n, [](Mask x) { return x != 0; });
    case FamilyKind::parity: {
      check_arity(spec.n);
      if ((spec.parity_mask & ~full_mask(spec.n)) != 0) invalid("parity mask outside dimension");
      const Mask s = spec.parity_mask == 0 ? full_mask(spec.n) : spec.parity_mask;
      return BooleanFunction::from_predicate(spec.n, [s](Mask x) { return dot(s, x) != 0; });
    }
    case FamilyKind::majority:
      check_arity(spec.n);
      return BooleanFunction::from_predicate(spec.n, [n = spec.n](Mask x) { return 2 * weight(x) > n; });
    case FamilyKind::symmetric: {
      if (spec.values.empty()) invalid("symmetric needs a non-empty value vector");
      check_arity(spec.n);
      if (spec.values.size() != spec.n + 1) {
        invalid("symmetric value vector must have n + 1 = " + std::to_string(spec.n + 1) + " entries");
      }
      for (unsigned v : spec.values) {
        if (v > 1) invalid("symmetric values must be 0 or 1");
      }
      return BooleanFunction::from_predicate(spec.n, [&](Mask x) { return spec.values[weight(x)] != 0; });
    }
    case FamilyKind::random_poly: {
      check_arity(spec.n);
      if (spec.degree > spec.n) {
        invalid("degree " + std::to_string(spec.degree) + " exceeds n = " + std::to_string(spec.n));
      }
      std::mt19937_64 rng(spec.seed);
      Anf anf{spec.n, {}};
      for (Mask m = 0; m <= full_mask(spec.n); ++m) {
        if (weight(m) <= spec.degree && (rng() >> 63) != 0) anf.monomials.push_back(m);
        if (m == full_mask(spec.n)) break;
      }
      return from_anf(anf);
    }
    case FamilyKind::affine_indicator: {
      check_arity(spec.n);
      std::vector<Mask> masks;
      for (const auto& c : spec.constraints) {
        if (c.mask == 0 || (c.mask & ~full_mask(spec.n)) != 0) invalid("constraint mask is zero or too long");
        if (c.bit > 1) invalid("constraint value must be 0 or 1");
        masks.push_back(c.mask);
      }
      if (span_dim(masks) != masks.size()) invalid("affine_indicator constraints are dependent");
      return BooleanFunction::from_predicate(spec.n, [&](Mask x) {
        for (const auto& c : spec.constraints) {
          if (dot(c.mask, x) != c.bit) return false;
        }
        return true;
      });
    }
  }
  invalid("unknown family");
}

// ---------------------------------------------------------------------------
// Text form

namespace {

class FamilyParser {
 public:
  FamilyParser(std::string_view text, std::size_t base) : text_(text), base_(base) {}

  FamilySpec parse() {
    const auto open = text_.find('(');
    if (open == std::string_view::npos) error(text_.size(), "expected '(' after family kind");
    if (text_.empty() || text_.back() != ')') error(text_.size(), "expected ')' at end");
    const std::string_view kind = text_.substr(0, open);
    FamilySpec spec;
    spec.kind = parse_kind(kind);
    bool have_n = false;
    bool have_d = false;

    std::size_t pos = open + 1;
    const std::size_t end = text_.size() - 1;
    while (pos < end) {
      std::size_t comma = text_.find(',', pos);
      if (comma == std::string_view::npos || comma > end) comma = end;
      const std::string_view item = text_.substr(pos, comma - pos);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0) error(pos, "expected key=value");
      const std::string_view key = item.substr(0, eq);
      const std::string_view value = item.substr(eq + 1);
      const std::size_t vpos = pos + eq + 1;
      if (key == "n" || (key == "k" && spec.kind == FamilyKind::bent_ip)) {
        spec.n = static_cast<unsigned>(number(value, vpos));
        have_n = true;
      } else if (key == "s" && spec.kind == FamilyKind::parity) {
        spec.parity_mask = bits(value, vpos);
      } else if (key == "v" && spec.kind == FamilyKind::symmetric) {
        for (std::size_t i = 0; i < value.size(); ++i) {
          if (value[i] != '0' && value[i] != '1') error(vpos + i, "expected 0 or 1");
          spec.values.push_back(static_cast<unsigned>(value[i] - '0'));
        }
        if (!have_n && !spec.values.empty()) spec.n = static_cast<unsigned>(spec.values.size() - 1);
      } else if (key == "d" && spec.kind == FamilyKind::random_poly) {
        spec.degree = static_cast<unsigned>(number(value, vpos));
        have_d = true;
      } else if (key == "seed" && spec.kind == FamilyKind::random_poly) {
        spec.seed = number(value, vpos);
      } else if (key == "c" && spec.kind == FamilyKind::affine_indicator) {
        constraints(value, vpos, spec.constraints);
      } else {
        error(pos, "unknown parameter '" + std::string(key) + "' for " + family_name(spec.kind));
      }
      pos = comma + 1;
    }
    if (spec.kind == FamilyKind::symmetric) {
      if (spec.values.empty()) invalid("symmetric needs a non-empty value vector");
    } else if (!have_n) {
      error(end, std::string("missing ") + (spec.kind == FamilyKind::bent_ip ? "k" : "n"));
    }
    if (spec.kind == FamilyKind::random_poly && !have_d) error(end, "missing d");
    for (const auto& [width, at] : widths_) {
      if (width != spec.n) {
        error(at, "bitstring has " + std::to_string(width) + " bits, expected " + std::to_string(spec.n));
      }
    }
    generate(spec);
    return spec;
  }

 private:
  [[noreturn]] void error(std::size_t pos, const std::string& what) const {
    fail(ErrorCode::parse_error, "at position " + std::to_string(base_ + pos) + ": " + what);
  }

  FamilyKind parse_kind(std::string_view kind) const {
    for (auto k : {FamilyKind::bent_ip, FamilyKind::and_, FamilyKind::or_, FamilyKind::parity,
                   FamilyKind::majority, FamilyKind::symmetric, FamilyKind::random_poly,
                   FamilyKind::affine_indicator}) {
      if (kind == family_name(k)) return k;
    }
    error(0, "unknown family '" + std::string(kind) + "'");
  }

  std::uint64_t number(std::string_view value, std::size_t pos) const {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
      error(pos, "expected an unsigned integer");
    }
    return out;
  }

  Mask bits(std::string_view value, std::size_t pos) const {
    if (value.empty() || value.size() > kMaxVars) error(pos, "expected a bitstring of length 1.." + std::to_string(kMaxVars));
    widths_.emplace_back(value.size(), pos);
    Mask m = 0;
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (value[i] != '0' && value[i] != '1') error(pos + i, "expected 0 or 1");
      if (value[i] == '1') m |= Mask{1} << i;
    }
    return m;
  }

  void constraints(std::string_view value, std::size_t pos, std::vector<AffineConstraint>& out) const {
    std::size_t start = 0;
    while (start <= value.size()) {
      std::size_t semi = value.find(';', start);
      if (semi == std::string_view::npos) semi = value.size();
      const std::string_view item = value.substr(start, semi - start);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos || eq + 2 != item.size()) error(pos + start, "expected mask=bit");
      const char bit = item[eq + 1];
      if (bit != '0' && bit != '1') error(pos + start + eq + 1, "expected 0 or 1");
      out.push_back({bits(item.substr(0, eq), pos + start), static_cast<unsigned>(bit - '0')});
      start = semi + 1;
    }
  }

  std::string_view text_;
  std::size_t base_;
  mutable std::vector<std::pair<std::size_t, std::size_t>> widths_;
};

}  // namespace

FamilySpec parse_family(std::string_view text, std::size_t position_base) {
  return FamilyParser(text, position_base).parse();
}

std::string format_family(const FamilySpec& spec) {
  std::string out = family_name(spec.kind);
  out += '(';
  switch (spec.kind) {
    case FamilyKind::bent_ip:
      out += "k=" + std::to_string(spec.n);
      break;
    case FamilyKind::parity:
      out += "n=" + std::to_string(spec.n);
      if (spec.parity_mask != 0) out += ",s=" + to_bitstring(spec.parity_mask, spec.n);
      break;
    case FamilyKind::symmetric:
      out += "v=";
      for (unsigned v : spec.values) out += static_cast<char>('0' + v);
      break;
    case FamilyKind::random_poly:
      out += "n=" + std::to_string(spec.n) + ",d=" + std::to_string(spec.degree) + ",seed=" +
             std::to_string(spec.seed);
      break;
    case FamilyKind::affine_indicator:
      out += "n=" + std::to_string(spec.n) + ",c=";
      for (std::size_t i = 0; i < spec.constraints.size(); ++i) {
        if (i > 0) out += ';';
        out += to_string(spec.constraints[i], spec.n);
      }
      break;
    default:
      out += "n=" + std::to_string(spec.n);
  }
  out += ')';
  return out;
}

// ---------------------------------------------------------------------------
// Corpora

namespace {

FamilySpec family(FamilyKind kind, unsigned n) {
  FamilySpec spec;
  spec.kind = kind;
  spec.n = n;
  return spec;
}

}  // namespace

std::vector<CorpusEntry> structured_corpus(unsigned n_min, unsigned n_max) {
  std::vector<CorpusEntry> out;
  const auto add = [&](const FamilySpec& spec) { out.push_back({spec, generate(spec)}); };
  for (unsigned n = n_min; n <= n_max; ++n) {
    add(family(FamilyKind::and_, n));
    add(family(FamilyKind::or_, n));
    add(family(FamilyKind::parity, n));
    if (n >= 2) {
      auto alternating = family(FamilyKind::parity, n);
      alternating.parity_mask = full_mask(n) & 0x55555555u;
      add(alternating);
    }
    add(family(FamilyKind::majority, n));
    if (n % 2 == 0) add(family(FamilyKind::bent_ip, n));

    std::vector<unsigned> zeros(n + 1, 0), ones(n + 1, 1), exactly_one(n + 1, 0), mod3(n + 1, 0);
    exactly_one[1] = 1;
    for (unsigned w = 0; w <= n; w += 3) mod3[w] = 1;
    for (auto* v : {&zeros, &ones, &exactly_one, &mod3}) {
      auto sym = family(FamilyKind::symmetric, n);
      sym.values = *v;
      add(sym);
    }

    auto affine = family(FamilyKind::affine_indicator, n);
    affine.constraints.push_back({Mask{1}, 1});
    if (n >= 3) affine.constraints.push_back({Mask{0b110}, 0});
    add(affine);

    auto poly = family(FamilyKind::random_poly, n);
    poly.degree = std::min(n, 3u);
    poly.seed = n;
    add(poly);
  }
  return out;
}

std::vector<CorpusEntry> random_corpus(std::size_t count, unsigned n_min, unsigned n_max, unsigned d_max,
                                       std::uint64_t seed_base) {
  std::vector<CorpusEntry> out;
  out.reserve(count);
  const unsigned span = n_max - n_min + 1;
  for (std::size_t i = 0; i < count; ++i) {
    auto spec = family(FamilyKind::random_poly, n_min + static_cast<unsigned>(i % span));
    spec.degree = std::min(spec.n, 1 + static_cast<unsigned>((i / span) % d_max));
    spec.seed = seed_base + i;
    out.push_back({spec, generate(spec)});
  }
  return out;
}

}  // namespace pdtkit
