#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "nhdiff/verifier.hpp"

namespace nhdiff {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

std::string elapsed_field(const SweepReport& r, const ReportRow& row) {
  return r.config.timing ? format_ms(row.elapsed_ms) : "0";
}

// Row rendered in the shape "Exception: q=..., differential uniformity=...".
std::string exception_line(const ReportRow& row) {
  const char* quantity = row.claim == ClaimId::BOOM_F21 ? "boomerang uniformity" : "differential uniformity";
  std::string line = "Exception: q=" + std::to_string(row.q) + ", ";
  if (row.claim == ClaimId::SPEC_F21 || row.claim == ClaimId::LEMMA_SUITE) {
    line += std::string("claim=") + claim_name(row.claim) + ", computed=" + row.computed;
  } else {
    line += std::string(quantity) + "=" + row.computed;
  }
  // The +-1/3 claims keep the bare shape for u = 1/3; every other row names its parameter.
  const bool bare = row.note == "u=1/3";
  if (row.u_code && !bare) line += ", u=" + std::to_string(*row.u_code);
  return line;
}

}  // namespace

std::string to_csv(const SweepReport& report) {
  std::ostringstream os;
  os << "q,p,n,u_code,claim_id,computed,expected,status,elapsed_ms\n";
  for (const auto& row : report.rows) {
    os << row.q << ',' << row.p << ',' << row.n << ',';
    if (row.u_code) os << *row.u_code;
    os << ',' << claim_name(row.claim) << ',' << row.computed << ',' << row.expected << ','
       << status_name(row.status) << ',' << elapsed_field(report, row) << '\n';
  }
  return os.str();
}

std::string to_json(const SweepReport& report, int indent) {
  ordered_json j;
  ordered_json config;
  ordered_json claims = ordered_json::array();
  for (ClaimId c : report.config.claims) claims.push_back(claim_name(c));
  config["claims"] = claims;
  config["min"] = report.config.min;
  config["max"] = report.config.max;
  config["u_mode"] = report.config.selector.describe();
  config["timing"] = report.config.timing;
  j["config"] = config;

  const SweepSummary s = report.summary();
  j["summary"] = {{"pass", s.pass}, {"exception", s.exception}, {"skipped", s.skipped},
                  {"errors", report.errors.size()}};

  ordered_json rows = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json r;
    r["q"] = row.q;
    r["p"] = row.p;
    r["n"] = row.n;
    r["u_code"] = row.u_code ? ordered_json(*row.u_code) : ordered_json(nullptr);
    r["claim_id"] = claim_name(row.claim);
    r["computed"] = row.computed;
    r["expected"] = row.expected;
    r["status"] = status_name(row.status);
    r["note"] = row.note;
    r["elapsed_ms"] = report.config.timing ? row.elapsed_ms : 0.0;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["errors"] = report.errors;
  return j.dump(indent) + "\n";
}

std::string to_text(const SweepReport& report) {
  std::ostringstream os;
  for (const auto& row : report.rows) {
    if (row.status == RowStatus::exception) os << exception_line(row) << '\n';
  }
  for (const auto& e : report.errors) os << "Error: " << e << '\n';
  for (ClaimId c : report.config.claims) {
    SweepSummary s;
    for (const auto& row : report.rows) {
      if (row.claim != c) continue;
      if (row.status == RowStatus::pass) ++s.pass;
      if (row.status == RowStatus::exception) ++s.exception;
      if (row.status == RowStatus::skipped) ++s.skipped;
    }
    os << claim_name(c) << ": pass=" << s.pass << " exception=" << s.exception << " skipped=" << s.skipped << '\n';
  }
  const SweepSummary s = report.summary();
  os << "total: pass=" << s.pass << " exception=" << s.exception << " skipped=" << s.skipped
     << " errors=" << report.errors.size() << '\n';
  return os.str();
}

}  // namespace nhdiff
