#include "arithdyn/arithdyn.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "commands.hpp"
#include "heights.hpp"
#include "integrality.hpp"
#include "padic.hpp"
#include "ratmap.hpp"
#include "report.hpp"

struct ad_point {
  arithdyn::ProjPoint value;
};

struct ad_map {
  arithdyn::RationalMap value;
};

namespace {

using namespace arithdyn;

thread_local std::string last_error;

ad_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return AD_INVALID_ARGUMENT;
    case ErrorCode::Domain: return AD_DOMAIN;
    case ErrorCode::BitCapExceeded: return AD_BIT_CAP_EXCEEDED;
    case ErrorCode::IterationCap: return AD_ITERATION_CAP;
    case ErrorCode::PrecisionExhausted: return AD_PRECISION_EXHAUSTED;
    case ErrorCode::Singular: return AD_SINGULAR;
    case ErrorCode::Internal: return AD_INTERNAL;
  }
  return AD_INTERNAL;
}

// Runs fn, translating exceptions into a status and the thread's last error.
template <class F>
ad_status guarded(F&& fn) {
  try {
    fn();
    last_error.clear();
    return AD_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const Json::exception& e) {
    last_error = std::string("malformed JSON: ") + e.what();
    return AD_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return AD_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return AD_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* ad_version(void) { return ARITHDYN_VERSION; }

const char* ad_last_error(void) { return last_error.c_str(); }

const char* ad_status_name(ad_status status) {
  switch (status) {
    case AD_OK: return "ok";
    case AD_INVALID_ARGUMENT: return error_code_name(ErrorCode::InvalidArgument);
    case AD_DOMAIN: return error_code_name(ErrorCode::Domain);
    case AD_BIT_CAP_EXCEEDED: return error_code_name(ErrorCode::BitCapExceeded);
    case AD_ITERATION_CAP: return error_code_name(ErrorCode::IterationCap);
    case AD_PRECISION_EXHAUSTED: return error_code_name(ErrorCode::PrecisionExhausted);
    case AD_SINGULAR: return error_code_name(ErrorCode::Singular);
    case AD_INTERNAL: return error_code_name(ErrorCode::Internal);
  }
  return "unknown";
}

void ad_string_free(char* s) { std::free(s); }

ad_status ad_point_parse(const char* text, ad_point** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new ad_point{ProjPoint::parse(text)};
  });
}

ad_status ad_point_new(const char* x0, const char* x1, ad_point** out) {
  return guarded([&] {
    require(x0, "x0");
    require(x1, "x1");
    require(out, "out");
    *out = new ad_point{ProjPoint(parse_integer(x0), parse_integer(x1))};
  });
}

void ad_point_free(ad_point* p) { delete p; }

ad_status ad_point_to_string(const ad_point* p, char** out) {
  return guarded([&] {
    require(p, "point");
    require(out, "out");
    *out = copy_out(p->value.to_string());
  });
}

int ad_point_equal(const ad_point* a, const ad_point* b) { return a && b && a->value == b->value ? 1 : 0; }

ad_status ad_map_new(const char* const* num, size_t num_len, const char* const* den, size_t den_len, ad_map** out) {
  return guarded([&] {
    require(out, "out");
    if (num_len > 0) require(num, "num");
    if (den_len > 0) require(den, "den");
    std::vector<Rational> n, d;
    for (size_t i = 0; i < num_len; ++i) {
      require(num[i], "num coefficient");
      n.push_back(parse_rational(num[i]));
    }
    for (size_t i = 0; i < den_len; ++i) {
      require(den[i], "den coefficient");
      d.push_back(parse_rational(den[i]));
    }
    *out = new ad_map{RationalMap::build(n, d)};
  });
}

ad_status ad_map_from_json(const char* json, ad_map** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new ad_map{map_from_json(Json::parse(json))};
  });
}

void ad_map_free(ad_map* m) { delete m; }

int ad_map_degree(const ad_map* m) { return m ? m->value.degree() : -1; }

ad_status ad_map_resultant(const ad_map* m, char** out) {
  return guarded([&] {
    require(m, "map");
    require(out, "out");
    *out = copy_out(m->value.resultant().get_str());
  });
}

ad_status ad_map_to_string(const ad_map* m, char** out) {
  return guarded([&] {
    require(m, "map");
    require(out, "out");
    *out = copy_out(m->value.to_string());
  });
}

ad_status ad_map_apply(const ad_map* m, const ad_point* x, ad_point** out) {
  return guarded([&] {
    require(m, "map");
    require(x, "point");
    require(out, "out");
    *out = new ad_point{m->value.apply(x->value)};
  });
}

ad_status ad_map_iterate(const ad_map* m, const ad_point* x, unsigned long n, size_t bit_cap, ad_point** out) {
  return guarded([&] {
    require(m, "map");
    require(x, "point");
    require(out, "out");
    *out = new ad_point{iterate(m->value, x->value, n, bit_cap == 0 ? kDefaultBitCap : bit_cap)};
  });
}

ad_status ad_weil_height(const ad_point* x, double* out) {
  return guarded([&] {
    require(x, "point");
    require(out, "out");
    *out = weil_height(x->value).value;
  });
}

ad_status ad_map_height(const ad_map* m, double* out) {
  return guarded([&] {
    require(m, "map");
    require(out, "out");
    *out = map_height(m->value).value;
  });
}

ad_status ad_height_drop_constants(const ad_map* m, double* e_up, double* e_low) {
  return guarded([&] {
    require(m, "map");
    require(e_up, "e_up");
    require(e_low, "e_low");
    const HeightDropConstants c = height_drop_constants(m->value);
    *e_up = c.e_up_value();
    *e_low = c.e_low_value();
  });
}

ad_status ad_canonical_height(const ad_map* m, const ad_point* x, double tolerance, unsigned max_iterations,
                              double* lo, double* hi) {
  return guarded([&] {
    require(m, "map");
    require(x, "point");
    require(lo, "lo");
    require(hi, "hi");
    CanonicalHeightOptions opt;
    opt.tolerance = tolerance;
    if (max_iterations != 0) opt.max_iterations = max_iterations;
    const CanonicalHeightInterval c = canonical_height(m->value, x->value, opt);
    *lo = c.lo;
    *hi = c.hi;
  });
}

ad_status ad_valuation(const char* rational, const char* p, long* out) {
  return guarded([&] {
    require(rational, "rational");
    require(p, "p");
    require(out, "out");
    *out = valuation(parse_rational(rational), parse_integer(p));
  });
}

ad_status ad_lte_valuation(const char* a, const char* b, const char* n, const char* p, long* out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(n, "n");
    require(p, "p");
    require(out, "out");
    *out = lte_valuation(parse_integer(a), parse_integer(b), parse_integer(n), parse_integer(p));
  });
}

ad_status ad_min_exponent_kv(const char* beta, const char* p, char** out) {
  return guarded([&] {
    require(beta, "beta");
    require(p, "p");
    require(out, "out");
    *out = copy_out(min_exponent_kv(parse_rational(beta), parse_integer(p)).get_str());
  });
}

ad_status ad_is_s_integral(const ad_point* x, const ad_point* beta, const char* places, int* out) {
  return guarded([&] {
    require(x, "point");
    require(beta, "beta");
    require(places, "places");
    require(out, "out");
    *out = is_s_integral(x->value, beta->value, PlaceSet::parse(places)).integral ? 1 : 0;
  });
}

ad_status ad_command_names(char** out) {
  return guarded([&] {
    require(out, "out");
    *out = copy_out(Json(command_names()).dump());
  });
}

ad_status ad_command_schema(const char* command, char** out) {
  return guarded([&] {
    require(command, "command");
    require(out, "out");
    *out = copy_out(command_schema(command));
  });
}

ad_status ad_run_command(const char* command, const char* config_json, char** report, int* exit_code) {
  return guarded([&] {
    require(command, "command");
    require(report, "report");
    require(exit_code, "exit_code");
    const CommandOutcome r = run_command(command, config_json ? config_json : "");
    *report = copy_out(r.text);
    *exit_code = r.exit_code;
  });
}

}  // extern "C"
