#include "nhdiff/verifier.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "nhdiff/characters.hpp"
#include "nhdiff/nh_family.hpp"
#include "nhdiff/spectra.hpp"

namespace nhdiff {

namespace {

constexpr std::array<ClaimId, 9> kClaims = {
    ClaimId::THM2_DELTA5, ClaimId::THM3_DELTA4, ClaimId::THM5_DELTA3,     ClaimId::THM6_DELTA4, ClaimId::SPEC_F21,
    ClaimId::BOOM_F21,    ClaimId::APN_Q7,      ClaimId::REMARK_11_19_43, ClaimId::LEMMA_SUITE,
};

// Sizes below which the numerically suggested thresholds do not apply.
constexpr std::uint32_t kDelta5Threshold = 4027;
constexpr std::uint32_t kDelta4Threshold = 839;
constexpr std::uint32_t kBoomerangThreshold = 307;
// Largest q for which SPEC_F21 aggregates the full table instead of one row.
constexpr std::uint32_t kFullTableLimit = 2048;

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return value;
}

}  // namespace

const char* claim_name(ClaimId id) noexcept {
  switch (id) {
    case ClaimId::THM2_DELTA5: return "THM2_DELTA5";
    case ClaimId::THM3_DELTA4: return "THM3_DELTA4";
    case ClaimId::THM5_DELTA3: return "THM5_DELTA3";
    case ClaimId::THM6_DELTA4: return "THM6_DELTA4";
    case ClaimId::SPEC_F21: return "SPEC_F21";
    case ClaimId::BOOM_F21: return "BOOM_F21";
    case ClaimId::APN_Q7: return "APN_Q7";
    case ClaimId::REMARK_11_19_43: return "REMARK_11_19_43";
    case ClaimId::LEMMA_SUITE: return "LEMMA_SUITE";
  }
  return "UNKNOWN";
}

const std::vector<ClaimId>& all_claims() {
  static const std::vector<ClaimId> claims(kClaims.begin(), kClaims.end());
  return claims;
}

std::vector<ClaimId> parse_claims(std::string_view list) {
  std::vector<ClaimId> out;
  for (const auto& raw : split(list, ',')) {
    const std::string token = upper(raw);
    if (token.empty()) continue;
    if (token == "ALL") return all_claims();
    bool found = false;
    for (ClaimId id : kClaims) {
      const std::string name = claim_name(id);
      if (token == name || token == name.substr(0, name.find('_'))) {
        if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
        found = true;
        break;
      }
    }
    if (!found) throw Error(Errc::invalid_argument, "unknown claim '" + raw + "'");
  }
  if (out.empty()) throw Error(Errc::invalid_argument, "no claims selected");
  std::sort(out.begin(), out.end());
  return out;
}

bool claim_accepts(ClaimId id, std::uint32_t p, std::uint32_t q) {
  if (q % 4 != 3) return false;
  switch (id) {
    case ClaimId::THM2_DELTA5:
    case ClaimId::THM3_DELTA4: return true;
    case ClaimId::THM5_DELTA3: return q % 8 == 7 && q > 7;
    case ClaimId::THM6_DELTA4: return q % 8 == 3 && p != 3 && q > 43;
    case ClaimId::SPEC_F21:
    case ClaimId::BOOM_F21:
    case ClaimId::LEMMA_SUITE: return q > 7;
    case ClaimId::APN_Q7: return q == 7;
    case ClaimId::REMARK_11_19_43: return q == 11 || q == 19 || q == 43;
  }
  return false;
}

std::vector<PrimePower> enumerate_prime_powers(std::uint64_t min, std::uint64_t max, const PrimePowerFilter& filter) {
  std::vector<PrimePower> out;
  if (max <= min || max < 3) return out;
  if (max - 1 > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(Errc::overflow, "range exceeds 32-bit field orders");
  }
  // Sieve primes below max.
  std::vector<bool> composite(max, false);
  for (std::uint64_t i = 2; i < max; ++i) {
    if (composite[i]) continue;
    for (std::uint64_t j = i * i; j < max; j += i) composite[j] = true;
    if (std::find(filter.excluded_primes.begin(), filter.excluded_primes.end(), i) != filter.excluded_primes.end()) {
      continue;
    }
    std::uint32_t n = 1;
    for (std::uint64_t power = i; power < max; power *= i, ++n) {
      if (power < min) continue;
      bool keep = true;
      for (const auto& c : filter.congruences) {
        if (c.modulus != 0 && power % c.modulus != c.residue % c.modulus) keep = false;
      }
      if (keep) {
        out.push_back({static_cast<std::uint32_t>(i), n, static_cast<std::uint32_t>(power)});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) { return a.q < b.q; });
  return out;
}

Element resolve_u_token(const Field& field, std::string_view token_in) {
  const std::string token = trim(token_in);
  if (token.empty()) throw Error(Errc::invalid_argument, "empty parameter token");
  const auto slash = token.find('/');
  if (slash != std::string::npos) {
    const auto num = parse_number<std::int64_t>(std::string_view(token).substr(0, slash));
    std::string den_text = token.substr(slash + 1);
    const auto den = parse_number<std::int64_t>(den_text);
    if (!num || !den) throw Error(Errc::invalid_argument, "cannot parse rational parameter '" + token + "'");
    const Element d = field.from_int(*den);
    if (d.code == 0) {
      throw Error(Errc::unsupported_parameter,
                  "parameter " + token + " is undefined in characteristic " + std::to_string(field.p()) +
                      " (the +-1/3 results assume p != 3)");
    }
    return field.div(field.from_int(*num), d);
  }
  if (token[0] == '+' || token[0] == '-') {
    const auto v = parse_number<std::int64_t>(token[0] == '+' ? std::string_view(token).substr(1) : std::string_view(token));
    if (!v) throw Error(Errc::invalid_argument, "cannot parse integer parameter '" + token + "'");
    return field.from_int(*v);
  }
  const auto code = parse_number<std::uint64_t>(token);
  if (!code) throw Error(Errc::invalid_argument, "cannot parse parameter '" + token + "'");
  return field.element(*code);
}

USelector USelector::parse(std::string_view text_in) {
  const std::string text = trim(text_in);
  USelector sel;
  if (text.empty() || text == "auto") return sel;
  if (text == "all") {
    sel.mode = Mode::all;
    return sel;
  }
  if (text.rfind("sample:", 0) == 0) {
    const auto parts = split(std::string_view(text).substr(7), ':');
    if (parts.size() != 2) throw Error(Errc::invalid_argument, "expected sample:K:SEED");
    const auto k = parse_number<std::uint32_t>(parts[0]);
    const auto seed = parse_number<std::uint64_t>(parts[1]);
    if (!k || *k == 0 || !seed) throw Error(Errc::invalid_argument, "expected sample:K:SEED with K >= 1");
    sel.mode = Mode::sampled;
    sel.per_class = *k;
    sel.seed = *seed;
    return sel;
  }
  if (text.rfind("fixed:", 0) == 0) {
    sel.mode = Mode::fixed;
    for (auto& t : split(std::string_view(text).substr(6), ',')) {
      if (!t.empty()) sel.tokens.push_back(t);
    }
    if (sel.tokens.empty()) throw Error(Errc::invalid_argument, "fixed: needs at least one parameter");
    return sel;
  }
  throw Error(Errc::invalid_argument, "unknown u-mode '" + text + "' (auto, all, sample:K:SEED, fixed:LIST)");
}

std::string USelector::describe() const {
  switch (mode) {
    case Mode::automatic: return "auto";
    case Mode::all: return "all";
    case Mode::sampled: return "sample:" + std::to_string(per_class) + ":" + std::to_string(seed);
    case Mode::fixed: {
      std::string s = "fixed:";
      for (std::size_t i = 0; i < tokens.size(); ++i) s += (i ? "," : "") + tokens[i];
      return s;
    }
  }
  return "auto";
}

const char* status_name(RowStatus s) noexcept {
  switch (s) {
    case RowStatus::pass: return "pass";
    case RowStatus::exception: return "exception";
    case RowStatus::skipped: return "skipped";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

ReportRow base_row(const PrimePower& pp, ClaimId claim, std::optional<std::uint32_t> u) {
  ReportRow row;
  row.q = pp.q;
  row.p = pp.p;
  row.n = pp.n;
  row.claim = claim;
  row.u_code = u;
  return row;
}

int sign_class(const Field& f, Element u) {
  const Element one = f.one();
  return (f.eta(u) > 0 ? 4 : 0) + (f.eta(f.add(one, u)) > 0 ? 2 : 0) + (f.eta(f.sub(one, u)) > 0 ? 1 : 0);
}

bool family_condition(ClaimId claim, const Field& f, Element u) {
  const Element one = f.one();
  if (claim == ClaimId::THM2_DELTA5) return f.eta(f.add(one, u)) == f.eta(f.sub(u, one));
  return f.eta(f.add(one, u)) == f.eta(f.sub(one, u));
}

// Parameters for the family-wide claims, ascending by code.
std::vector<Element> select_family_parameters(ClaimId claim, const Field& f, const USelector& sel) {
  std::array<std::vector<Element>, 8> by_class;
  for (std::uint32_t c = 0; c < f.q(); ++c) {
    const Element u{c};
    if (is_excluded_parameter(f, u) || !family_condition(claim, f, u)) continue;
    by_class[static_cast<std::size_t>(sign_class(f, u))].push_back(u);
  }
  const bool exhaustive =
      sel.mode == USelector::Mode::all || (sel.mode == USelector::Mode::automatic && f.q() <= sel.exhaustive_limit);
  std::vector<Element> out;
  for (std::size_t k = 0; k < by_class.size(); ++k) {
    auto& members = by_class[k];
    if (exhaustive || members.size() <= sel.per_class) {
      out.insert(out.end(), members.begin(), members.end());
      continue;
    }
    std::mt19937_64 rng(sel.seed ^ (std::uint64_t{f.q()} * 0x9E3779B97F4A7C15ull) ^ k);
    for (std::uint32_t i = 0; i < sel.per_class; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng() % (members.size() - i));
      std::swap(members[i], members[j]);
    }
    out.insert(out.end(), members.begin(), members.begin() + sel.per_class);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct DeltaExpectation {
  std::uint32_t expected;
  std::uint32_t cap;          // larger values are always exceptions
  std::uint32_t threshold;    // below this q a mismatch is informational
};

void judge(ReportRow& row, std::uint64_t computed, const DeltaExpectation& e) {
  row.computed = std::to_string(computed);
  row.expected = std::to_string(e.expected);
  if (computed == e.expected) {
    row.status = RowStatus::pass;
  } else if (computed > e.cap) {
    row.status = RowStatus::exception;
    row.note = "exceeds proven cap " + std::to_string(e.cap);
  } else if (row.q < e.threshold) {
    row.status = RowStatus::skipped;
    row.note = "below conjectured threshold " + std::to_string(e.threshold);
  } else {
    row.status = RowStatus::exception;
  }
}

std::vector<ReportRow> verify_family(ClaimId claim, const PrimePower& pp, const Field& f, const USelector& sel) {
  std::vector<ReportRow> rows;
  const DeltaExpectation e = claim == ClaimId::THM2_DELTA5 ? DeltaExpectation{5, 5, kDelta5Threshold}
                                                            : DeltaExpectation{4, 4, kDelta4Threshold};
  const DerivativeKernel kernel(f, 2);
  std::vector<std::uint32_t> values;
  std::vector<std::uint32_t> counts;

  auto evaluate = [&](Element u) {
    const auto start = Clock::now();
    ReportRow row = base_row(pp, claim, u.code);
    judge(row, kernel.uniformity(u, values, counts), e);
    row.elapsed_ms = ms_since(start);
    rows.push_back(std::move(row));
  };

  if (sel.mode == USelector::Mode::fixed) {
    std::vector<std::pair<Element, std::string>> picked;
    for (const auto& token : sel.tokens) {
      Element u;
      try {
        u = resolve_u_token(f, token);
      } catch (const Error& err) {
        ReportRow row = base_row(pp, claim, std::nullopt);
        row.status = RowStatus::skipped;
        row.note = err.what();
        rows.push_back(std::move(row));
        continue;
      }
      if (is_excluded_parameter(f, u) || !family_condition(claim, f, u)) {
        ReportRow row = base_row(pp, claim, u.code);
        row.status = RowStatus::skipped;
        row.note = "parameter outside the claim's hypotheses";
        rows.push_back(std::move(row));
        continue;
      }
      evaluate(u);
    }
    return rows;
  }

  const auto params = select_family_parameters(claim, f, sel);
  if (params.empty()) {
    ReportRow row = base_row(pp, claim, std::nullopt);
    row.status = RowStatus::skipped;
    row.note = "no parameter satisfies the hypotheses";
    rows.push_back(std::move(row));
  }
  for (Element u : params) evaluate(u);
  return rows;
}

std::vector<ReportRow> verify_third(ClaimId claim, const PrimePower& pp, const Field& f, std::uint32_t expected) {
  std::vector<ReportRow> rows;
  const Element third = f.inv(f.from_int(3));
  const DerivativeKernel kernel(f, 2);
  std::vector<std::uint32_t> values;
  std::vector<std::uint32_t> counts;
  for (Element u : {third, f.neg(third)}) {
    const auto start = Clock::now();
    ReportRow row = base_row(pp, claim, u.code);
    row.note = u == third ? "u=1/3" : "u=-1/3";
    const std::uint32_t delta = kernel.uniformity(u, values, counts);
    row.computed = std::to_string(delta);
    row.expected = std::to_string(expected);
    row.status = delta == expected ? RowStatus::pass : RowStatus::exception;
    row.elapsed_ms = ms_since(start);
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) { return a.u_code < b.u_code; });
  return rows;
}

std::vector<ReportRow> verify_spectrum(const PrimePower& pp, const Field& f) {
  std::vector<ReportRow> rows;
  const DifferentialSpectrum closed = closed_form_spectrum_F21(f);
  for (Element u : {f.one(), f.neg(f.one())}) {
    const auto start = Clock::now();
    ReportRow row = base_row(pp, ClaimId::SPEC_F21, u.code);
    const FunctionTable table = FunctionTable::nh(f, {2, u});
    const bool full = f.q() <= kFullTableLimit;
    const DifferentialSpectrum s =
        full ? differential_spectrum(table) : differential_spectrum(table, NHParams{2, u});
    row.computed = spectrum_string(s.omega);
    row.expected = spectrum_string(closed.omega);
    const bool ok = row.computed == row.expected && spectrum_identities_hold(s) && s.locally_apn &&
                    s.uniformity == closed.uniformity;
    row.status = ok ? RowStatus::pass : RowStatus::exception;
    row.note = full ? "full table" : "row reduction";
    if (!s.locally_apn) row.note += "; not locally-APN";
    row.elapsed_ms = ms_since(start);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ReportRow> verify_boomerang(const PrimePower& pp, const Field& f) {
  std::vector<ReportRow> rows;
  for (Element u : {f.one(), f.neg(f.one())}) {
    const auto start = Clock::now();
    ReportRow row = base_row(pp, ClaimId::BOOM_F21, u.code);
    const FunctionTable table = FunctionTable::nh(f, {2, u});
    const auto bct = bct_row(table, f.one());
    const std::uint64_t beta = *std::max_element(bct.begin() + 1, bct.end());
    judge(row, beta, DeltaExpectation{2, 2, kBoomerangThreshold});
    row.elapsed_ms = ms_since(start);
    rows.push_back(std::move(row));
  }
  return rows;
}

ReportRow verify_lemmas(const PrimePower& pp, const Field& f) {
  const auto start = Clock::now();
  ReportRow row = base_row(pp, ClaimId::LEMMA_SUITE, std::nullopt);
  std::vector<std::string> failed;
  const std::uint64_t q = f.q();

  const auto part = cij_partition(f);
  const std::uint64_t small = (q - 3) / 4;
  if (part.count(0, 0) != small || part.count(1, 0) != small || part.count(1, 1) != small ||
      part.count(0, 1) != (q + 1) / 4) {
    failed.push_back("cij_counts");
  }

  const Poly quartic({f.neg(f.one()), Element{}, Element{}, Element{}, f.one()});
  if (weil_sum_brute(f, quartic) != -1) failed.push_back("sum_eta_x4_minus_1");

  const LambdaCensus census = lambda_census(f);
  if (!census.lambda1_formula) failed.push_back("lambda1_formula");
  if (!census.lambda2_formula) failed.push_back("lambda2_formula");
  if (!census.union_identity) failed.push_back("lambda_union");
  if (census.third_seven_mod_8_bound && !*census.third_seven_mod_8_bound) failed.push_back("lambda_seven_mod_8_bound");
  if (census.third_three_mod_8_bound && !*census.third_three_mod_8_bound) failed.push_back("lambda_three_mod_8_bound");
  if (!census.boomerang_bound) failed.push_back("boomerang_lambda_bound");

  const FunctionTable table = FunctionTable::nh(f, {2, f.one()});
  const auto bct = bct_row(table, f.one());
  for (std::uint32_t b = 1; b < q; ++b) {
    if (boomerang_case_counts_F21(f, Element{b}).total() != bct[b]) {
      failed.push_back("boomerang_case_counts");
      break;
    }
  }

  row.computed = std::to_string(failed.size());
  row.expected = "0";
  row.status = failed.empty() ? RowStatus::pass : RowStatus::exception;
  for (std::size_t i = 0; i < failed.size(); ++i) row.note += (i ? "," : "") + failed[i];
  row.elapsed_ms = ms_since(start);
  return row;
}

}  // namespace

std::vector<ReportRow> verify_claim(ClaimId claim, const PrimePower& pp, const USelector& selector) {
  if (!claim_accepts(claim, pp.p, pp.q)) {
    ReportRow row = base_row(pp, claim, std::nullopt);
    row.status = RowStatus::skipped;
    row.note = "q outside the claim's hypotheses";
    return {row};
  }
  const Field field = Field::build(pp.p, pp.n);
  switch (claim) {
    case ClaimId::THM2_DELTA5:
    case ClaimId::THM3_DELTA4: return verify_family(claim, pp, field, selector);
    case ClaimId::THM5_DELTA3: return verify_third(claim, pp, field, 3);
    case ClaimId::THM6_DELTA4: return verify_third(claim, pp, field, 4);
    case ClaimId::APN_Q7: return verify_third(claim, pp, field, 2);
    case ClaimId::REMARK_11_19_43: return verify_third(claim, pp, field, 3);
    case ClaimId::SPEC_F21: return verify_spectrum(pp, field);
    case ClaimId::BOOM_F21: return verify_boomerang(pp, field);
    case ClaimId::LEMMA_SUITE: return {verify_lemmas(pp, field)};
  }
  return {};
}

SweepSummary SweepReport::summary() const {
  SweepSummary s;
  for (const auto& r : rows) {
    switch (r.status) {
      case RowStatus::pass: ++s.pass; break;
      case RowStatus::exception: ++s.exception; break;
      case RowStatus::skipped: ++s.skipped; break;
    }
  }
  return s;
}

std::vector<std::size_t> split_evenly(std::size_t count, std::size_t parts) {
  if (parts == 0) parts = 1;
  const std::size_t avg = count / parts;
  const std::size_t extra = count % parts;
  std::vector<std::size_t> bounds{0};
  for (std::size_t i = 0; i < parts; ++i) bounds.push_back(bounds.back() + avg + (i < extra ? 1 : 0));
  return bounds;
}

SweepReport sweep(const SweepConfig& config) {
  if (config.jobs == 0) throw Error(Errc::invalid_argument, "jobs must be at least 1");
  if (config.claims.empty()) throw Error(Errc::invalid_argument, "no claims selected");
  SweepReport report;
  report.config = config;

  std::vector<PrimePower> work;
  for (const auto& pp : enumerate_prime_powers(config.min, config.max, {{{4, 3}}, {}})) {
    for (ClaimId c : config.claims) {
      if (claim_accepts(c, pp.p, pp.q)) {
        work.push_back(pp);
        break;
      }
    }
  }

  struct Partial {
    std::vector<ReportRow> rows;
    std::vector<std::pair<std::uint32_t, std::string>> errors;
  };
  const std::size_t parts = std::max<std::size_t>(1, std::min<std::size_t>(config.jobs, work.size()));
  const auto bounds = split_evenly(work.size(), parts);
  std::vector<Partial> partials(parts);

  auto run_chunk = [&](std::size_t k) {
    Partial& out = partials[k];
    for (std::size_t i = bounds[k]; i < bounds[k + 1]; ++i) {
      const PrimePower& pp = work[i];
      for (ClaimId c : config.claims) {
        if (!claim_accepts(c, pp.p, pp.q)) continue;
        try {
          auto rows = verify_claim(c, pp, config.selector);
          for (auto& r : rows) out.rows.push_back(std::move(r));
        } catch (const std::exception& e) {
          out.errors.emplace_back(pp.q, std::string(claim_name(c)) + ": " + e.what());
        }
      }
    }
  };

  if (parts == 1) {
    run_chunk(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(parts);
    for (std::size_t k = 0; k < parts; ++k) threads.emplace_back(run_chunk, k);
    for (auto& t : threads) t.join();
  }

  std::vector<std::pair<std::uint32_t, std::string>> errors;
  for (auto& part : partials) {
    for (auto& r : part.rows) report.rows.push_back(std::move(r));
    for (auto& e : part.errors) errors.push_back(std::move(e));
  }
  std::stable_sort(report.rows.begin(), report.rows.end(), [](const ReportRow& a, const ReportRow& b) {
    const std::int64_t ua = a.u_code ? static_cast<std::int64_t>(*a.u_code) : -1;
    const std::int64_t ub = b.u_code ? static_cast<std::int64_t>(*b.u_code) : -1;
    if (a.q != b.q) return a.q < b.q;
    if (ua != ub) return ua < ub;
    return a.claim < b.claim;
  });
  std::stable_sort(errors.begin(), errors.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [q, msg] : errors) report.errors.push_back("q=" + std::to_string(q) + ", " + msg);
  if (!config.timing) {
    for (auto& r : report.rows) r.elapsed_ms = 0.0;
  }
  return report;
}

bool LambdaCensus::ok() const {
  return lambda1_formula && lambda2_formula && union_identity && third_seven_mod_8_bound.value_or(true) &&
         third_three_mod_8_bound.value_or(true) && boomerang_bound;
}

LambdaCensus lambda_census(const Field& f) {
  if (!f.is_3_mod_4()) throw Error(Errc::unsupported_field, "census needs q = 3 (mod 4)");
  if (f.q() <= 7) throw Error(Errc::unsupported_parameter, "census needs q > 7");
  LambdaCensus c;
  c.q = f.q();
  c.T = cubic_character_sum(f);
  const Element one = f.one();
  const Element two = f.from_int(2);
  c.eta2 = f.eta(two);
  const double q = f.q();
  const double root = std::sqrt(q);

  std::vector<std::uint32_t> row;
  DerivativeKernel(f, 2).delta_row(one, row);
  for (std::uint32_t code = 0; code < f.q(); ++code) {
    const Element b{code};
    const bool outer = f.eta(f.add(b, two)) == 1 && f.eta(f.sub(b, two)) == 1;
    bool in1 = false;
    bool in2 = false;
    if (outer) {
      const Element half = f.div(b, two);
      if (auto y = f.square_root_in_squares(f.neg(half))) in1 = f.eta(f.add(*y, one)) == -1;
      if (auto y = f.square_root_in_squares(half)) in2 = f.eta(f.sub(*y, one)) == -1;
    }
    c.lambda1 += in1;
    c.lambda2 += in2;
    c.overlap += in1 && in2;
    c.delta_two += row[code] == 2;
  }
  const std::int64_t qi = f.q();
  c.lambda1_formula = 16 * static_cast<std::int64_t>(c.lambda1) == qi + 1 + 2 * c.eta2 * c.T;
  c.lambda2_formula = 16 * static_cast<std::int64_t>(c.lambda2) == qi + 1 - 2 * c.T;
  c.union_identity = c.lambda1 + c.lambda2 - c.overlap == c.delta_two;

  if (f.p() != 3) {
    const CaseAnalysis third(f, f.inv(f.from_int(3)));
    if (f.q() % 8 == 7) {
      std::uint64_t n = 0;
      for (std::uint32_t code = 0; code < f.q(); ++code) {
        const auto a = third.counts(Element{code});
        n += a.c10() == 2 && a.c11() == 1;
      }
      c.third_seven_mod_8 = n;
      c.third_seven_mod_8_bound = 64.0 * static_cast<double>(n) >= q - 58.0 * root + 3.0;
    } else {
      std::uint64_t n = 0;
      for (std::uint32_t code = 0; code < f.q(); ++code) {
        const auto a = third.counts(Element{code});
        n += a.c01() == 2 && a.c11() == 1 && a.c10() == 1;
      }
      c.third_three_mod_8 = n;
      c.third_three_mod_8_bound = 256.0 * static_cast<double>(n) >= 4.0 * q - 3644.0 * root - 5174041.0;
    }
  }

  for (std::uint32_t code = 1; code < f.q(); ++code) {
    const auto pc = boomerang_case_counts_F21(f, Element{code});
    c.boomerang_pairs += pc.counts[0][1] == 1 && pc.counts[0][2] == 1;
  }
  c.boomerang_bound = 128.0 * static_cast<double>(c.boomerang_pairs) >= q - 7756.0 * root - 17844127.0;
  return c;
}

}  // namespace nhdiff
