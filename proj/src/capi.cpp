#include "nhdiff/nhdiff.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "json.hpp"
#include "nhdiff/characters.hpp"
#include "nhdiff/field.hpp"
#include "nhdiff/nh_family.hpp"
#include "nhdiff/spectra.hpp"
#include "nhdiff/verifier.hpp"

struct nhd_field {
  nhdiff::Field field;
};

struct nhd_report {
  nhdiff::SweepReport report;
};

namespace {

thread_local std::string last_error;

nhd_status to_status(nhdiff::Errc e) {
  using nhdiff::Errc;
  switch (e) {
    case Errc::not_prime: return NHD_ERR_NOT_PRIME;
    case Errc::even_prime: return NHD_ERR_EVEN_PRIME;
    case Errc::zero_degree: return NHD_ERR_ZERO_DEGREE;
    case Errc::overflow: return NHD_ERR_OVERFLOW;
    case Errc::domain: return NHD_ERR_DOMAIN;
    case Errc::unsupported_field: return NHD_ERR_UNSUPPORTED_FIELD;
    case Errc::unsupported_parameter: return NHD_ERR_UNSUPPORTED_PARAMETER;
    case Errc::degenerate_input: return NHD_ERR_DEGENERATE_INPUT;
    case Errc::precondition: return NHD_ERR_PRECONDITION;
    case Errc::consistency: return NHD_ERR_CONSISTENCY;
    case Errc::invalid_argument: return NHD_ERR_INVALID_ARGUMENT;
    case Errc::internal: return NHD_ERR_INTERNAL;
  }
  return NHD_ERR_INTERNAL;
}

template <class Fn>
nhd_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    fn();
    return NHD_OK;
  } catch (const nhdiff::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return NHD_ERR_OVERFLOW;
  } catch (const std::exception& e) {
    last_error = e.what();
    return NHD_ERR_INTERNAL;
  }
}

void require(const void* ptr, const char* what) {
  if (ptr == nullptr) throw nhdiff::Error(nhdiff::Errc::invalid_argument, std::string(what) + " must not be null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

nhdiff::Element checked_u(const nhdiff::Field& f, std::uint32_t code) { return f.element(code); }

nhdiff::USelector selector_from(const char* u_mode) {
  return u_mode == nullptr ? nhdiff::USelector{} : nhdiff::USelector::parse(u_mode);
}

}  // namespace

extern "C" {

const char* nhd_version(void) { return "0.1.0"; }

const char* nhd_status_name(nhd_status status) {
  switch (status) {
    case NHD_OK: return "ok";
    case NHD_ERR_NOT_PRIME: return "not_prime";
    case NHD_ERR_EVEN_PRIME: return "even_prime";
    case NHD_ERR_ZERO_DEGREE: return "zero_degree";
    case NHD_ERR_OVERFLOW: return "overflow";
    case NHD_ERR_DOMAIN: return "domain";
    case NHD_ERR_UNSUPPORTED_FIELD: return "unsupported_field";
    case NHD_ERR_UNSUPPORTED_PARAMETER: return "unsupported_parameter";
    case NHD_ERR_DEGENERATE_INPUT: return "degenerate_input";
    case NHD_ERR_PRECONDITION: return "precondition";
    case NHD_ERR_CONSISTENCY: return "consistency";
    case NHD_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case NHD_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* nhd_last_error(void) { return last_error.c_str(); }

void nhd_string_free(char* s) { std::free(s); }

nhd_status nhd_field_create(uint32_t p, uint32_t n, nhd_field** out) {
  return guarded([&] {
    require(out, "out");
    *out = new nhd_field{nhdiff::Field::build(p, n)};
  });
}

nhd_status nhd_field_create_q(uint64_t q, nhd_field** out) {
  return guarded([&] {
    require(out, "out");
    std::uint32_t n = 0;
    const auto p = nhdiff::prime_power_base(q, &n);
    if (!p) throw nhdiff::Error(nhdiff::Errc::not_prime, "q = " + std::to_string(q) + " is not a prime power");
    *out = new nhd_field{nhdiff::Field::build(*p, n)};
  });
}

nhd_status nhd_field_create_with_modulus(uint32_t p, const uint32_t* modulus, size_t length, nhd_field** out) {
  return guarded([&] {
    require(out, "out");
    require(modulus, "modulus");
    *out = new nhd_field{nhdiff::Field::with_modulus(p, std::vector<std::uint32_t>(modulus, modulus + length))};
  });
}

void nhd_field_destroy(nhd_field* field) { delete field; }

uint32_t nhd_field_p(const nhd_field* field) { return field ? field->field.p() : 0; }
uint32_t nhd_field_n(const nhd_field* field) { return field ? field->field.n() : 0; }
uint32_t nhd_field_q(const nhd_field* field) { return field ? field->field.q() : 0; }

nhd_status nhd_field_info_json(const nhd_field* field, char** out) {
  return guarded([&] {
    require(field, "field");
    require(out, "out");
    const nhdiff::Field& f = field->field;
    nlohmann::ordered_json j;
    j["p"] = f.p();
    j["n"] = f.n();
    j["q"] = f.q();
    j["modulus"] = f.modulus();
    j["generator"] = f.generator().code;
    j["q_mod_4"] = f.q() % 4;
    j["eta_table"] = f.has_eta_table();
    if (f.is_3_mod_4()) {
      const auto part = nhdiff::cij_partition(f);
      j["cij_counts"] = {{"C00", part.count(0, 0)}, {"C01", part.count(0, 1)},
                         {"C10", part.count(1, 0)}, {"C11", part.count(1, 1)}};
    } else {
      j["cij_counts"] = nullptr;
    }
    *out = copy_string(j.dump());
  });
}

nhd_status nhd_field_eta(const nhd_field* field, uint32_t code, int* out) {
  return guarded([&] {
    require(field, "field");
    require(out, "out");
    *out = field->field.eta(field->field.element(code));
  });
}

nhd_status nhd_resolve_u(const nhd_field* field, const char* token, uint32_t* out_code) {
  return guarded([&] {
    require(field, "field");
    require(token, "token");
    require(out_code, "out_code");
    *out_code = nhdiff::resolve_u_token(field->field, token).code;
  });
}

nhd_status nhd_nh_eval(const nhd_field* field, unsigned r, uint32_t u_code, uint32_t x_code, uint32_t* out) {
  return guarded([&] {
    require(field, "field");
    require(out, "out");
    const nhdiff::Field& f = field->field;
    *out = nhdiff::eval_F(f, {r, checked_u(f, u_code)}, f.element(x_code)).code;
  });
}

nhd_status nhd_nh_uniformity(const nhd_field* field, unsigned r, uint32_t u_code, uint32_t* out) {
  return guarded([&] {
    require(field, "field");
    require(out, "out");
    const nhdiff::Field& f = field->field;
    std::vector<std::uint32_t> values;
    std::vector<std::uint32_t> counts;
    *out = nhdiff::DerivativeKernel(f, r).uniformity(checked_u(f, u_code), values, counts);
  });
}

nhd_status nhd_nh_spectrum_json(const nhd_field* field, unsigned r, uint32_t u_code, int reduced, char** out) {
  return guarded([&] {
    require(field, "field");
    require(out, "out");
    const nhdiff::Field& f = field->field;
    const nhdiff::NHParams params{r, checked_u(f, u_code)};
    const auto table = nhdiff::FunctionTable::nh(f, params);
    const auto s = reduced ? nhdiff::differential_spectrum(table, params) : nhdiff::differential_spectrum(table);
    *out = copy_string(nhdiff::to_json(s, {r, u_code}));
  });
}

nhd_status nhd_nh_boomerang_json(const nhd_field* field, unsigned r, uint32_t u_code, int reduced, char** out) {
  return guarded([&] {
    require(field, "field");
    require(out, "out");
    const nhdiff::Field& f = field->field;
    const nhdiff::NHParams params{r, checked_u(f, u_code)};
    const auto table = nhdiff::FunctionTable::nh(f, params);
    const auto s = reduced ? nhdiff::boomerang_spectrum(table, params) : nhdiff::boomerang_spectrum(table);
    *out = copy_string(nhdiff::to_json(s, {r, u_code}));
  });
}

nhd_status nhd_charsum_selftest(uint32_t qmax, uint64_t seed, char** out, int* all_passed) {
  return guarded([&] {
    require(out, "out");
    const auto rows = nhdiff::charsum_selftest(qmax, seed);
    std::ostringstream os;
    os << "check,q,cases,failures\n";
    bool ok = true;
    for (const auto& row : rows) {
      os << row.check << ',' << row.q << ',' << row.cases << ',' << row.failures << '\n';
      ok = ok && row.failures == 0;
    }
    *out = copy_string(os.str());
    if (all_passed) *all_passed = ok ? 1 : 0;
  });
}

nhd_status nhd_lower_bound_constants(const char* which, nhd_constants* out) {
  return guarded([&] {
    require(which, "which");
    require(out, "out");
    const auto c = nhdiff::lower_bound_constants(which);
    out->m1 = c.m1;
    out->m2 = c.m2;
    out->m2_real = c.m2_real;
    out->exceptional_term = c.exceptional_term;
  });
}

nhd_status nhd_sweep(const char* claims, uint64_t min, uint64_t max, unsigned jobs, const char* u_mode, int timing,
                     nhd_report** out) {
  return guarded([&] {
    require(claims, "claims");
    require(out, "out");
    nhdiff::SweepConfig config;
    config.claims = nhdiff::parse_claims(claims);
    config.min = min;
    config.max = max;
    config.jobs = jobs;
    config.selector = selector_from(u_mode);
    config.timing = timing != 0;
    *out = new nhd_report{nhdiff::sweep(config)};
  });
}

nhd_status nhd_verify(const char* claims, uint64_t q, const char* u_mode, nhd_report** out) {
  return guarded([&] {
    require(claims, "claims");
    require(out, "out");
    std::uint32_t n = 0;
    const auto p = nhdiff::prime_power_base(q, &n);
    if (!p) throw nhdiff::Error(nhdiff::Errc::not_prime, "q = " + std::to_string(q) + " is not a prime power");
    if (*p == 2) throw nhdiff::Error(nhdiff::Errc::even_prime, "q must be odd");
    auto holder = std::make_unique<nhd_report>();
    nhdiff::SweepConfig& config = holder->report.config;
    config.claims = nhdiff::parse_claims(claims);
    config.min = q;
    config.max = q + 1;
    config.selector = selector_from(u_mode);
    const nhdiff::PrimePower pp{*p, n, static_cast<std::uint32_t>(q)};
    for (auto claim : config.claims) {
      for (auto& row : nhdiff::verify_claim(claim, pp, config.selector)) {
        row.elapsed_ms = 0.0;
        holder->report.rows.push_back(std::move(row));
      }
    }
    std::stable_sort(holder->report.rows.begin(), holder->report.rows.end(),
                     [](const nhdiff::ReportRow& a, const nhdiff::ReportRow& b) {
                       const std::int64_t ua = a.u_code ? static_cast<std::int64_t>(*a.u_code) : -1;
                       const std::int64_t ub = b.u_code ? static_cast<std::int64_t>(*b.u_code) : -1;
                       return ua != ub ? ua < ub : a.claim < b.claim;
                     });
    *out = holder.release();
  });
}

void nhd_report_destroy(nhd_report* report) { delete report; }

nhd_status nhd_report_counts_get(const nhd_report* report, nhd_report_counts* out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    const auto s = report->report.summary();
    out->pass = s.pass;
    out->exception = s.exception;
    out->skipped = s.skipped;
    out->errors = report->report.errors.size();
  });
}

nhd_status nhd_report_format(const nhd_report* report, const char* format, char** out) {
  return guarded([&] {
    require(report, "report");
    require(format, "format");
    require(out, "out");
    const std::string fmt = format;
    if (fmt == "csv") {
      *out = copy_string(nhdiff::to_csv(report->report));
    } else if (fmt == "json") {
      *out = copy_string(nhdiff::to_json(report->report));
    } else if (fmt == "text") {
      *out = copy_string(nhdiff::to_text(report->report));
    } else {
      throw nhdiff::Error(nhdiff::Errc::invalid_argument, "format must be csv, json or text");
    }
  });
}

}  // extern "C"
