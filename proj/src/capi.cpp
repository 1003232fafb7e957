#include "nlbox/nlbox.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "correlators.hpp"
#include "errors.hpp"
#include "network_dist.hpp"
#include "quad_ext.hpp"
#include "reports.hpp"

struct nlbox_quad {
  nlbox::QuadExt value;
};

struct nlbox_table {
  nlbox::CorrelatorTable table;
};

struct nlbox_dist {
  nlbox::ExactDistribution dist;
};

struct nlbox_report {
  nlbox::Report report;
  std::string text;
  std::string json;
};

namespace {

thread_local std::string last_error;

nlbox_status fail(nlbox_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <class Body>
nlbox_status guarded(Body&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const nlbox::ParseError& e) {
    return fail(NLBOX_ERROR_PARSE, e.what());
  } catch (const nlbox::RangeError& e) {
    return fail(NLBOX_ERROR_RANGE, e.what());
  } catch (const nlbox::DomainError& e) {
    return fail(NLBOX_ERROR_DOMAIN, e.what());
  } catch (const nlbox::ResourceError& e) {
    return fail(NLBOX_ERROR_RESOURCE, e.what());
  } catch (const nlbox::ValidationError& e) {
    return fail(NLBOX_ERROR_VALIDATION, e.what());
  } catch (const std::bad_alloc&) {
    return fail(NLBOX_ERROR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(NLBOX_ERROR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

nlbox::Topology make_topology(nlbox_topology kind, int n) {
  switch (kind) {
    case NLBOX_LINE:
      return nlbox::Topology::line(n);
    case NLBOX_LOOP:
      return nlbox::Topology::loop(n);
  }
  throw nlbox::ValidationError("unknown topology kind");
}

template <class T>
nlbox_status require(const T* p, const char* what) {
  return p == nullptr ? fail(NLBOX_ERROR_INVALID_ARGUMENT, std::string(what) + " is null") : NLBOX_OK;
}

nlbox_status emit_quad(nlbox::QuadExt value, nlbox_quad** out) {
  *out = new nlbox_quad{std::move(value)};
  return NLBOX_OK;
}

nlbox_status emit_report(nlbox::Report report, nlbox_report** out) {
  auto r = std::make_unique<nlbox_report>();
  r->text = report.text();
  r->json = report.json();
  r->report = std::move(report);
  *out = r.release();
  return NLBOX_OK;
}

#define NLBOX_REQUIRE(p)                                     \
  do {                                                       \
    if (nlbox_status s_ = require((p), #p); s_ != NLBOX_OK) { \
      return s_;                                             \
    }                                                        \
  } while (0)

template <class Op>
nlbox_status binary(const nlbox_quad* x, const nlbox_quad* y, nlbox_quad** out, Op op) {
  NLBOX_REQUIRE(x);
  NLBOX_REQUIRE(y);
  NLBOX_REQUIRE(out);
  return guarded([&] { return emit_quad(op(x->value, y->value), out); });
}

}  // namespace

extern "C" {

const char* nlbox_version(void) { return "1.0.0"; }

const char* nlbox_status_name(nlbox_status status) {
  switch (status) {
    case NLBOX_OK:
      return "ok";
    case NLBOX_ERROR_INVALID_ARGUMENT:
      return "invalid argument";
    case NLBOX_ERROR_PARSE:
      return "parse error";
    case NLBOX_ERROR_RANGE:
      return "range error";
    case NLBOX_ERROR_DOMAIN:
      return "domain error";
    case NLBOX_ERROR_RESOURCE:
      return "resource error";
    case NLBOX_ERROR_VALIDATION:
      return "validation error";
    case NLBOX_ERROR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* nlbox_last_error(void) { return last_error.c_str(); }

void nlbox_string_free(char* s) { std::free(s); }

int nlbox_get_enumeration_limit(void) { return nlbox::enumeration_limit(); }

nlbox_status nlbox_set_enumeration_limit(int limit) {
  return guarded([&] {
    nlbox::set_enumeration_limit(limit);
    return NLBOX_OK;
  });
}

nlbox_status nlbox_quad_parse(const char* text, nlbox_quad** out) {
  NLBOX_REQUIRE(text);
  NLBOX_REQUIRE(out);
  return guarded([&] { return emit_quad(nlbox::QuadExt::parse(text), out); });
}

nlbox_status nlbox_quad_from_ints(long a, long b, nlbox_quad** out) {
  NLBOX_REQUIRE(out);
  return guarded([&] { return emit_quad(nlbox::QuadExt(a, b), out); });
}

nlbox_status nlbox_quad_pow_sqrt2(unsigned k, nlbox_quad** out) {
  NLBOX_REQUIRE(out);
  return guarded([&] { return emit_quad(nlbox::pow_sqrt2(k), out); });
}

nlbox_quad* nlbox_quad_clone(const nlbox_quad* x) { return x == nullptr ? nullptr : new nlbox_quad{x->value}; }

void nlbox_quad_free(nlbox_quad* x) { delete x; }

nlbox_status nlbox_quad_add(const nlbox_quad* x, const nlbox_quad* y, nlbox_quad** out) {
  return binary(x, y, out, [](const auto& a, const auto& b) { return a + b; });
}

nlbox_status nlbox_quad_sub(const nlbox_quad* x, const nlbox_quad* y, nlbox_quad** out) {
  return binary(x, y, out, [](const auto& a, const auto& b) { return a - b; });
}

nlbox_status nlbox_quad_mul(const nlbox_quad* x, const nlbox_quad* y, nlbox_quad** out) {
  return binary(x, y, out, [](const auto& a, const auto& b) { return a * b; });
}

nlbox_status nlbox_quad_div(const nlbox_quad* x, const nlbox_quad* y, nlbox_quad** out) {
  return binary(x, y, out, [](const auto& a, const auto& b) { return a / b; });
}

nlbox_status nlbox_quad_neg(const nlbox_quad* x, nlbox_quad** out) {
  NLBOX_REQUIRE(x);
  NLBOX_REQUIRE(out);
  return guarded([&] { return emit_quad(-x->value, out); });
}

int nlbox_quad_sign(const nlbox_quad* x) { return x == nullptr ? 0 : x->value.sign(); }

int nlbox_quad_equal(const nlbox_quad* x, const nlbox_quad* y) {
  return x != nullptr && y != nullptr && x->value == y->value;
}

nlbox_status nlbox_quad_to_double(const nlbox_quad* x, double* out) {
  NLBOX_REQUIRE(x);
  NLBOX_REQUIRE(out);
  return guarded([&] {
    *out = x->value.to_double();
    return NLBOX_OK;
  });
}

nlbox_status nlbox_quad_format(const nlbox_quad* x, char** out) {
  NLBOX_REQUIRE(x);
  NLBOX_REQUIRE(out);
  return guarded([&] {
    *out = dup_string(x->value.to_string());
    return NLBOX_OK;
  });
}

nlbox_status nlbox_quad_to_json(const nlbox_quad* x, char** out) {
  NLBOX_REQUIRE(x);
  NLBOX_REQUIRE(out);
  return guarded([&] {
    *out = dup_string(nlbox::to_json(x->value).dump());
    return NLBOX_OK;
  });
}

nlbox_status nlbox_quad_from_json(const char* json, nlbox_quad** out) {
  NLBOX_REQUIRE(json);
  NLBOX_REQUIRE(out);
  return guarded([&] {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::exception& e) {
      throw nlbox::ParseError(e.what());
    }
    return emit_quad(nlbox::quad_from_json(j), out);
  });
}

nlbox_status nlbox_table_create(int n_max, nlbox_table** out) {
  NLBOX_REQUIRE(out);
  return guarded([&] {
    *out = new nlbox_table{nlbox::CorrelatorTable::canonical(n_max)};
    return NLBOX_OK;
  });
}

void nlbox_table_free(nlbox_table* table) { delete table; }

int nlbox_table_size(const nlbox_table* table) { return table == nullptr ? 0 : table->table.n_max(); }

nlbox_status nlbox_table_line(const nlbox_table* table, int k, nlbox_quad** out) {
  NLBOX_REQUIRE(table);
  NLBOX_REQUIRE(out);
  return guarded([&] { return emit_quad(table->table.line(k), out); });
}

nlbox_status nlbox_table_loop(const nlbox_table* table, int k, nlbox_quad** out) {
  NLBOX_REQUIRE(table);
  NLBOX_REQUIRE(out);
  return guarded([&] { return emit_quad(table->table.loop(k), out); });
}

nlbox_status nlbox_line_correlator_closed(int n, double* out) {
  NLBOX_REQUIRE(out);
  return guarded([&] {
    *out = nlbox::line_correlator_closed(n);
    return NLBOX_OK;
  });
}

nlbox_status nlbox_loop_correlator_closed(int n, double* out) {
  NLBOX_REQUIRE(out);
  return guarded([&] {
    *out = nlbox::loop_correlator_closed(n);
    return NLBOX_OK;
  });
}

nlbox_status nlbox_q_value(nlbox_topology topology, const char* outcome, const nlbox_table* table,
                           nlbox_quad** out) {
  NLBOX_REQUIRE(outcome);
  NLBOX_REQUIRE(table);
  NLBOX_REQUIRE(out);
  return guarded([&] {
    const nlbox::Outcome x = nlbox::Outcome::parse(outcome);
    return emit_quad(nlbox::q_value(x, make_topology(topology, x.size()), table->table), out);
  });
}

nlbox_status nlbox_dist_create(nlbox_topology topology, int n, const nlbox_table* table, nlbox_dist** out) {
  NLBOX_REQUIRE(table);
  NLBOX_REQUIRE(out);
  return guarded([&] {
    *out = new nlbox_dist{nlbox::distribution(make_topology(topology, n), table->table)};
    return NLBOX_OK;
  });
}

void nlbox_dist_free(nlbox_dist* dist) { delete dist; }

nlbox_status nlbox_dist_flip(const nlbox_dist* dist, nlbox_dist** out) {
  NLBOX_REQUIRE(dist);
  NLBOX_REQUIRE(out);
  return guarded([&] {
    *out = new nlbox_dist{nlbox::flip_outputs(dist->dist)};
    return NLBOX_OK;
  });
}

uint64_t nlbox_dist_size(const nlbox_dist* dist) { return dist == nullptr ? 0 : dist->dist.size(); }

nlbox_status nlbox_dist_q(const nlbox_dist* dist, uint64_t index, nlbox_quad** out) {
  NLBOX_REQUIRE(dist);
  NLBOX_REQUIRE(out);
  if (index >= dist->dist.size()) return fail(NLBOX_ERROR_RANGE, "outcome index out of range");
  return guarded([&] { return emit_quad(dist->dist.q(index), out); });
}

nlbox_status nlbox_dist_outcome(const nlbox_dist* dist, uint64_t index, char** out) {
  NLBOX_REQUIRE(dist);
  NLBOX_REQUIRE(out);
  if (index >= dist->dist.size()) return fail(NLBOX_ERROR_RANGE, "outcome index out of range");
  return guarded([&] {
    *out = dup_string(nlbox::Outcome(dist->dist.topology().n, index).to_string());
    return NLBOX_OK;
  });
}

nlbox_status nlbox_dist_count_negative(const nlbox_dist* dist, int workers, uint64_t* out) {
  NLBOX_REQUIRE(dist);
  NLBOX_REQUIRE(out);
  return guarded([&] {
    *out = nlbox::verify_nonnegativity(dist->dist, workers).violation_count;
    return NLBOX_OK;
  });
}

nlbox_status nlbox_correlators(int n, const char* golden_path_or_null, nlbox_report** out) {
  NLBOX_REQUIRE(out);
  return guarded([&] {
    std::optional<std::string> golden;
    if (golden_path_or_null != nullptr) golden = golden_path_or_null;
    return emit_report(nlbox::correlators_report(n, golden), out);
  });
}

nlbox_status nlbox_dist_table(nlbox_topology topology, int n, nlbox_report** out) {
  NLBOX_REQUIRE(out);
  return guarded([&] { return emit_report(nlbox::dist_report(make_topology(topology, n)), out); });
}

nlbox_status nlbox_verify(nlbox_topology topology, int n_max, int workers, nlbox_report** out) {
  NLBOX_REQUIRE(out);
  return guarded([&] {
    const nlbox::TopologyKind kind = topology == NLBOX_LOOP ? nlbox::TopologyKind::Loop : nlbox::TopologyKind::Line;
    return emit_report(nlbox::verify_report(kind, n_max, workers), out);
  });
}

nlbox_status nlbox_lemma1(nlbox_report** out) {
  NLBOX_REQUIRE(out);
  return guarded([&] { return emit_report(nlbox::lemma1_report(), out); });
}

nlbox_status nlbox_bound(double tolerance, nlbox_report** out) {
  NLBOX_REQUIRE(out);
  return guarded([&] { return emit_report(nlbox::bound_report(tolerance), out); });
}

nlbox_status nlbox_search_certificate(int reference_support_only, int forbid_e3_squared, nlbox_report** out) {
  NLBOX_REQUIRE(out);
  return guarded([&] {
    nlbox::CertificateSearchOptions options;
    options.reference_support_only = reference_support_only != 0;
    options.forbid_e3_squared = forbid_e3_squared != 0;
    return emit_report(nlbox::search_report(options), out);
  });
}

nlbox_status nlbox_sample(nlbox_topology topology, int n, uint64_t count, uint64_t seed, nlbox_report** out) {
  NLBOX_REQUIRE(out);
  return guarded([&] { return emit_report(nlbox::sample_report(make_topology(topology, n), count, seed), out); });
}

int nlbox_report_passed(const nlbox_report* report) { return report != nullptr && report->report.passed; }

const char* nlbox_report_text(const nlbox_report* report) { return report == nullptr ? "" : report->text.c_str(); }

const char* nlbox_report_json(const nlbox_report* report) { return report == nullptr ? "" : report->json.c_str(); }

const char* nlbox_report_csv(const nlbox_report* report) {
  return report == nullptr ? "" : report->report.csv.c_str();
}

void nlbox_report_free(nlbox_report* report) { delete report; }

}  // extern "C"
