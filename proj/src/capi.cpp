#include "pdtkit/pdtkit.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "pdtkit/comm.hpp"
#include "pdtkit/error.hpp"
#include "pdtkit/serialize.hpp"
#include "pdtkit/spec_string.hpp"
#include "pdtkit/sweep.hpp"

struct pdtkit_function {
  pdtkit::BooleanFunction f;
};

struct pdtkit_tree {
  pdtkit::Pdt tree;
  std::optional<pdtkit::Strategy> strategy;
};

namespace {

thread_local std::string last_error;

pdtkit_status status_of(pdtkit::ErrorCode code) {
  using pdtkit::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return PDTKIT_E_INVALID_ARGUMENT;
    case ErrorCode::not_boolean: return PDTKIT_E_NOT_BOOLEAN;
    case ErrorCode::dimension_mismatch: return PDTKIT_E_DIMENSION_MISMATCH;
    case ErrorCode::invalid_eta: return PDTKIT_E_INVALID_ETA;
    case ErrorCode::dependent_input: return PDTKIT_E_DEPENDENT_INPUT;
    case ErrorCode::zero_direction: return PDTKIT_E_ZERO_DIRECTION;
    case ErrorCode::dependent_constraints: return PDTKIT_E_DEPENDENT_CONSTRAINTS;
    case ErrorCode::not_found: return PDTKIT_E_NOT_FOUND;
    case ErrorCode::constant_input: return PDTKIT_E_CONSTANT_INPUT;
    case ErrorCode::invalid_tree: return PDTKIT_E_INVALID_TREE;
    case ErrorCode::too_large: return PDTKIT_E_TOO_LARGE;
    case ErrorCode::invalid_spec: return PDTKIT_E_INVALID_SPEC;
    case ErrorCode::zero_density: return PDTKIT_E_ZERO_DENSITY;
    case ErrorCode::invalid_degree: return PDTKIT_E_INVALID_DEGREE;
    case ErrorCode::parse_error: return PDTKIT_E_PARSE;
    case ErrorCode::overflow: return PDTKIT_E_OVERFLOW;
  }
  return PDTKIT_E_INTERNAL;
}

template <class Body>
pdtkit_status guarded(Body&& body) {
  try {
    body();
    last_error.clear();
    return PDTKIT_OK;
  } catch (const pdtkit::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return PDTKIT_E_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return PDTKIT_E_INTERNAL;
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) pdtkit::fail(pdtkit::ErrorCode::invalid_argument, std::string(name) + " is null");
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const pdtkit::Json& json) {
  if (out != nullptr) *out = copy_out(pdtkit::dump(json));
}

pdtkit::Mask parse_point(const char* bits, unsigned n, const char* name) {
  require(bits, name);
  const std::string_view text(bits);
  if (text.size() != n) {
    pdtkit::fail(pdtkit::ErrorCode::dimension_mismatch,
                 std::string(name) + " must have " + std::to_string(n) + " bits, got " + std::to_string(text.size()));
  }
  return pdtkit::parse_bitstring(text);
}

}  // namespace

extern "C" {

const char* pdtkit_version(void) { return "0.1.0"; }

const char* pdtkit_status_name(pdtkit_status status) {
  switch (status) {
    case PDTKIT_OK: return "Ok";
    case PDTKIT_E_INTERNAL: return "Internal";
    default: break;
  }
  const int code = static_cast<int>(status) - 1;
  if (code < 0 || code > static_cast<int>(pdtkit::ErrorCode::overflow)) return "Unknown";
  return pdtkit::error_code_name(static_cast<pdtkit::ErrorCode>(code));
}

const char* pdtkit_last_error(void) { return last_error.c_str(); }

void pdtkit_string_free(char* s) { std::free(s); }

pdtkit_status pdtkit_function_parse(const char* spec, pdtkit_function** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    *out = new pdtkit_function{pdtkit::parse_function_spec(spec)};
  });
}

pdtkit_status pdtkit_function_from_table(unsigned n, const unsigned char* table, size_t length,
                                         pdtkit_function** out) {
  return guarded([&] {
    require(table, "table");
    require(out, "out");
    if (n > pdtkit::kMaxVars) pdtkit::fail(pdtkit::ErrorCode::too_large, "arity above the supported maximum");
    if (length != (std::size_t{1} << n)) {
      pdtkit::fail(pdtkit::ErrorCode::dimension_mismatch, "table length must be 2^n");
    }
    *out = new pdtkit_function{pdtkit::BooleanFunction(n, std::vector<std::uint8_t>(table, table + length))};
  });
}

void pdtkit_function_free(pdtkit_function* f) { delete f; }

unsigned pdtkit_function_arity(const pdtkit_function* f) { return f == nullptr ? 0 : f->f.arity(); }

pdtkit_status pdtkit_function_eval(const pdtkit_function* f, uint32_t x, int* out) {
  return guarded([&] {
    require(f, "function");
    require(out, "out");
    if (x >= f->f.size()) pdtkit::fail(pdtkit::ErrorCode::dimension_mismatch, "input outside the domain");
    *out = f->f(x) ? 1 : 0;
  });
}

pdtkit_status pdtkit_analyze(const pdtkit_function* f, char** json) {
  return guarded([&] {
    require(f, "function");
    emit(json, pdtkit::analyze_json(f->f));
  });
}

pdtkit_status pdtkit_tree_build(const pdtkit_function* f, const char* strategy, pdtkit_tree** out) {
  return guarded([&] {
    require(f, "function");
    require(strategy, "strategy");
    require(out, "out");
    const auto s = pdtkit::parse_strategy(strategy);
    *out = new pdtkit_tree{pdtkit::build(f->f, s).tree, s};
  });
}

pdtkit_status pdtkit_tree_from_json(const char* json, pdtkit_tree** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    pdtkit::Json parsed;
    try {
      parsed = pdtkit::Json::parse(json);
    } catch (const nlohmann::json::exception& e) {
      pdtkit::fail(pdtkit::ErrorCode::parse_error, std::string("invalid JSON: ") + e.what());
    }
    std::optional<pdtkit::Strategy> strategy;
    if (parsed.is_object() && parsed.contains("strategy") && parsed["strategy"].is_string()) {
      strategy = pdtkit::parse_strategy(parsed["strategy"].get<std::string>());
    }
    *out = new pdtkit_tree{pdtkit::tree_from_json(parsed), strategy};
  });
}

void pdtkit_tree_free(pdtkit_tree* t) { delete t; }

pdtkit_status pdtkit_tree_eval(const pdtkit_tree* t, uint32_t x, int* out) {
  return guarded([&] {
    require(t, "tree");
    require(out, "out");
    if ((x & ~pdtkit::full_mask(t->tree.arity())) != 0) {
      pdtkit::fail(pdtkit::ErrorCode::dimension_mismatch, "input outside the domain");
    }
    *out = static_cast<int>(pdtkit::pdt_eval(t->tree, x));
  });
}

pdtkit_status pdtkit_tree_depth(const pdtkit_tree* t, size_t* out) {
  return guarded([&] {
    require(t, "tree");
    require(out, "out");
    *out = t->tree.depth();
  });
}

pdtkit_status pdtkit_tree_to_json(const pdtkit_tree* t, char** json) {
  return guarded([&] {
    require(t, "tree");
    emit(json, pdtkit::tree_json(t->tree, t->strategy));
  });
}

pdtkit_status pdtkit_tree_to_dot(const pdtkit_tree* t, char** dot) {
  return guarded([&] {
    require(t, "tree");
    require(dot, "dot");
    *dot = copy_out(pdtkit::tree_dot(t->tree));
  });
}

pdtkit_status pdtkit_tree_check(const pdtkit_tree* t, const pdtkit_function* f, int* correct, char** json) {
  return guarded([&] {
    require(t, "tree");
    require(f, "function");
    const auto check = pdtkit::pdt_check(t->tree, f->f);
    if (correct != nullptr) *correct = check.correct ? 1 : 0;
    emit(json, pdtkit::check_json(check, f->f.arity()));
  });
}

pdtkit_status pdtkit_certificate(const pdtkit_function* f, const char* method, int* verified, char** json) {
  return guarded([&] {
    require(f, "function");
    require(method, "method");
    const std::string_view m(method);
    pdtkit::Json out;
    if (m == "greedy") {
      out = pdtkit::certificate_json(pdtkit::cert_greedy_l1(f->f), f->f, "greedy");
    } else if (m == "norm-halving") {
      out = pdtkit::halving_json(pdtkit::cert_norm_halving_traced(f->f), f->f);
    } else {
      pdtkit::fail(pdtkit::ErrorCode::invalid_argument, "unknown certificate method '" + std::string(m) + "'");
    }
    if (verified != nullptr) *verified = out["verified"].get<bool>() ? 1 : 0;
    emit(json, out);
  });
}

pdtkit_status pdtkit_rank(const pdtkit_function* f, unsigned max_codim, char** json) {
  return guarded([&] {
    require(f, "function");
    emit(json, pdtkit::rank_json(pdtkit::rank_exact(f->f, max_codim), f->f.arity()));
  });
}

pdtkit_status pdtkit_comm_rank(const pdtkit_function* f, int* equal, char** json) {
  return guarded([&] {
    require(f, "function");
    const std::size_t rank = pdtkit::matrix_rank_exact(pdtkit::xor_matrix(f->f));
    const std::size_t l0 = pdtkit::wht(f->f).sparsity();
    if (equal != nullptr) *equal = rank == l0 ? 1 : 0;
    pdtkit::Json out;
    out["n"] = f->f.arity();
    out["matrix_rank"] = rank;
    out["l0"] = l0;
    out["equal"] = rank == l0;
    emit(json, out);
  });
}

pdtkit_status pdtkit_comm_simulate(const pdtkit_tree* t, const pdtkit_function* f, const char* x, const char* y,
                                   int* correct, char** json) {
  return guarded([&] {
    require(t, "tree");
    require(f, "function");
    const unsigned n = f->f.arity();
    if (t->tree.arity() != n) pdtkit::fail(pdtkit::ErrorCode::dimension_mismatch, "tree and function arity differ");
    const pdtkit::Mask px = parse_point(x, n, "x");
    const pdtkit::Mask py = parse_point(y, n, "y");
    const auto transcript = pdtkit::simulate_protocol(t->tree, px, py);
    const unsigned expected = f->f(px ^ py) ? 1u : 0u;
    if (correct != nullptr) *correct = transcript.output == expected ? 1 : 0;
    emit(json, pdtkit::transcript_json(transcript, px, py, n, expected));
  });
}

pdtkit_status pdtkit_verify(const pdtkit_function* f, int* overall, char** json) {
  return guarded([&] {
    require(f, "function");
    const auto report = pdtkit::invariant_report(f->f);
    if (overall != nullptr) *overall = report.overall ? 1 : 0;
    emit(json, pdtkit::report_json(report));
  });
}

pdtkit_status pdtkit_sweep(const char* family, unsigned n_lo, unsigned n_hi, const char* strategies, char** csv,
                           char** diagnostics) {
  return guarded([&] {
    require(family, "family");
    require(strategies, "strategies");
    require(csv, "csv");
    pdtkit::SweepOptions options;
    options.family = family;
    options.n_lo = n_lo;
    options.n_hi = n_hi;
    std::string_view list(strategies);
    while (!list.empty()) {
      const auto comma = list.find(',');
      options.strategies.push_back(pdtkit::parse_strategy(list.substr(0, comma)));
      list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
    }
    const auto result = pdtkit::sweep(options);
    std::string notes;
    for (const auto& s : result.skipped) notes += s + "\n";
    *csv = copy_out(result.csv);
    if (diagnostics != nullptr) *diagnostics = copy_out(notes);
  });
}

}  // extern "C"
