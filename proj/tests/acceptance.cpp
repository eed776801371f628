// End-to-end acceptance run: one PASS/FAIL line per criterion.
//   acceptance            runs criteria 1..9
//   acceptance 3 5        runs only the listed criteria
// Exit status is 0 only when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nhdiff/characters.hpp"
#include "nhdiff/nh_family.hpp"
#include "nhdiff/spectra.hpp"
#include "nhdiff/verifier.hpp"
#include "oracles.hpp"

using namespace nhdiff;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> findings;
  std::string summary;

  void fail(const std::string& what) {
    pass = false;
    if (findings.size() < 20) findings.push_back(what);
  }
};

std::vector<PrimePower> orders(std::uint64_t min, std::uint64_t max, std::uint32_t modulus, std::uint32_t residue,
                               std::vector<std::uint32_t> excluded = {}) {
  return enumerate_prime_powers(min, max, {{Congruence{modulus, residue}}, std::move(excluded)});
}

Field field_of(const PrimePower& pp) { return Field::build(pp.p, pp.n); }

std::uint32_t uniformity(const Field& f, Element u) {
  std::vector<std::uint32_t> values;
  std::vector<std::uint32_t> counts;
  return DerivativeKernel(f, 2).uniformity(u, values, counts);
}

std::string qs(std::uint32_t q) { return "q=" + std::to_string(q); }

// 1. Closed-form spectrum of F_{2,1} against full-table enumeration.
Outcome closed_form_spectra() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& pp : orders(11, 2001, 4, 3)) {
    const Field f = field_of(pp);
    const auto full = differential_spectrum(FunctionTable::nh(f, {2, f.one()}));
    const auto closed = closed_form_spectrum_F21(f);
    if (full.omega != closed.omega) o.fail(qs(pp.q) + " spectrum " + spectrum_string(full.omega));
    if (!spectrum_identities_hold(full)) o.fail(qs(pp.q) + " identities");
    if (closed.omega.size() != 4 || !closed.omega.count((f.q() + 1) / 4)) o.fail(qs(pp.q) + " support");
    ++n;
  }
  o.summary = std::to_string(n) + " fields, 11 <= q <= 2000";
  return o;
}

// 2. Constants of the first lower bound.
Outcome bound_constants() {
  Outcome o;
  const auto c = lower_bound_constants("thm2");
  if (c.m1 != -98312 || c.m2 != -325643353) {
    o.fail("got (" + std::to_string(c.m1) + ", " + std::to_string(c.m2) + ")");
  }
  o.summary = "(m1, m2) = (" + std::to_string(c.m1) + ", " + std::to_string(c.m2) + ")";
  return o;
}

// 3. u = +-1/3, q = 7 (mod 8).
Outcome third_seven_mod_8() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& pp : orders(8, 3364, 8, 7)) {
    const Field f = field_of(pp);
    const Element third = f.inv(f.from_int(3));
    for (Element u : {third, f.neg(third)}) {
      const auto d = uniformity(f, u);
      if (d != 3) o.fail(qs(pp.q) + " u=" + std::to_string(u.code) + " delta=" + std::to_string(d));
    }
    ++n;
  }
  const Field f7 = Field::build(7, 1);
  const auto d7 = uniformity(f7, f7.inv(f7.from_int(3)));
  if (d7 != 2) o.fail("q=7 delta=" + std::to_string(d7));
  o.summary = std::to_string(n) + " fields with delta 3, q=7 delta " + std::to_string(d7);
  return o;
}

// 4. u = +-1/3, q = 3 (mod 8), p != 3.
Outcome third_three_mod_8() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& pp : orders(3, 5001, 8, 3, {3})) {
    const Field f = field_of(pp);
    const Element third = f.inv(f.from_int(3));
    const bool small = pp.q <= 43;
    for (Element u : {third, f.neg(third)}) {
      const auto d = uniformity(f, u);
      const bool want_three = pp.q == 11 || pp.q == 19 || pp.q == 43;
      if (small && want_three != (d == 3)) o.fail(qs(pp.q) + " delta=" + std::to_string(d));
      if (!small && d != 4) o.fail(qs(pp.q) + " u=" + std::to_string(u.code) + " delta=" + std::to_string(d));
    }
    ++n;
  }
  o.summary = std::to_string(n) + " fields up to 5000";
  return o;
}

// 5. Exhaustive family checks in the numerically suggested ranges.
Outcome family_ranges() {
  Outcome o;
  std::uint64_t rows = 0;
  std::uint64_t above_cap = 0;
  const USelector every = USelector::parse("all");
  auto run = [&](ClaimId claim, std::uint64_t lo, std::uint64_t hi) {
    for (const auto& pp : orders(lo, hi + 1, 4, 3)) {
      for (const auto& r : verify_claim(claim, pp, every)) {
        if (!r.u_code) continue;
        ++rows;
        if (std::stoull(r.computed) > 5) ++above_cap;
        if (r.status != RowStatus::pass) {
          o.fail(std::string(claim_name(claim)) + " " + qs(pp.q) + " u=" + std::to_string(*r.u_code) +
                 " delta=" + r.computed + " expected " + r.expected);
        }
      }
    }
  };
  run(ClaimId::THM2_DELTA5, 4027, 8000);
  run(ClaimId::THM3_DELTA4, 839, 4000);
  if (above_cap) o.fail(std::to_string(above_cap) + " parameters exceed delta 5");
  o.summary = std::to_string(rows) + " (q, u) pairs, " + std::to_string(above_cap) + " above the cap";
  return o;
}

// 6. Boomerang uniformity of F_{2,1} and the closed case counts.
Outcome boomerang() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& pp : orders(7, 2001, 4, 3)) {
    const Field f = field_of(pp);
    for (Element u : {f.one(), f.neg(f.one())}) {
      const auto row = bct_row(FunctionTable::nh(f, {2, u}), f.one());
      std::uint64_t beta = 0;
      for (std::size_t b = 1; b < row.size(); ++b) beta = std::max(beta, row[b]);
      if (beta > 2) o.fail(qs(pp.q) + " beta(1, b) = " + std::to_string(beta));
      if (pp.q >= 307 && beta != 2) o.fail(qs(pp.q) + " beta = " + std::to_string(beta));
    }
    ++n;
  }
  for (std::uint32_t q : {311u, 331u}) {
    const Field f = Field::build(q, 1);
    const oracle::Gf g(q);
    const auto v = oracle::nh_table(g, 2, 1);
    for (std::uint32_t b = 1; b < q; ++b) {
      const auto total = boomerang_case_counts_F21(f, Element{b}).total();
      const auto brute = oracle::bct_entry(g, v, 1, b);
      if (total != brute) o.fail(qs(q) + " b=" + std::to_string(b));
    }
  }
  o.summary = std::to_string(n) + " fields with beta(1, b) <= 2; case counts exact at q = 311, 331";
  return o;
}

// 7. Character-sum oracle suite.
Outcome character_sums() {
  Outcome o;
  std::uint64_t cases = 0;
  for (const auto& row : charsum_selftest(199, 1)) {
    cases += row.cases;
    if (row.failures) o.fail(row.check + " " + qs(row.q) + " failures=" + std::to_string(row.failures));
  }
  o.summary = std::to_string(cases) + " cases, q <= 199";
  return o;
}

// Isomorphism F_p[x]/(from) -> F_p[x]/(to) given by a root of `from` in the target.
std::vector<std::uint32_t> field_isomorphism(const Field& from, const Field& to) {
  const auto& m = from.modulus();
  std::vector<std::uint32_t> image(from.q());
  for (std::uint32_t a = 0; a < to.q(); ++a) {
    Element acc = to.zero();
    Element power = to.one();
    for (std::uint32_t c : m) {
      acc = to.add(acc, to.mul(to.from_int(c), power));
      power = to.mul(power, Element{a});
    }
    if (acc != to.zero()) continue;
    for (std::uint32_t code = 0; code < from.q(); ++code) {
      Element img = to.zero();
      Element pw = to.one();
      std::uint32_t rest = code;
      for (std::uint32_t i = 0; i < from.n(); ++i) {
        img = to.add(img, to.mul(to.from_int(rest % from.p()), pw));
        pw = to.mul(pw, Element{a});
        rest /= from.p();
      }
      image[code] = img.code;
    }
    return image;
  }
  throw Error(Errc::internal, "no root of the modulus in the target field");
}

// 8. Structural properties.
Outcome structure() {
  Outcome o;
  for (const auto& pp : orders(7, 200, 4, 3)) {
    const Field f = field_of(pp);
    for (std::uint32_t u = 0; u < f.q(); ++u) {
      const NHParams prm{2, Element{u}};
      const auto table = FunctionTable::nh(f, prm);
      const auto full = differential_spectrum(table);
      const auto reduced = differential_spectrum(table, prm);
      if (full.omega != reduced.omega || full.locally_apn != reduced.locally_apn) {
        o.fail("reduced " + qs(pp.q) + " u=" + std::to_string(u));
      }
      const auto neg = differential_spectrum(FunctionTable::nh(f, {2, f.neg(Element{u})}));
      if (neg.omega != full.omega) o.fail("+-u " + qs(pp.q) + " u=" + std::to_string(u));
    }
  }

  for (const auto& pp : orders(11, 500, 4, 3)) {
    const Field f = field_of(pp);
    const oracle::Gf g(f.p(), f.n() == 1 ? std::vector<std::uint32_t>{} : f.modulus());
    for (std::uint32_t u = 2; u < f.q(); ++u) {
      const Element ue{u};
      if (ue == f.neg(f.one())) continue;
      const CaseAnalysis ca(f, ue);
      const auto pre = oracle::class_preimages(g, oracle::nh_table(g, 2, u));
      for (std::uint32_t b = 0; b < f.q(); ++b) {
        const auto c = ca.counts(Element{b});
        for (std::size_t k = 0; k < 4; ++k) {
          if (c.c[k] != pre[b][k]) {
            o.fail("class counts " + qs(pp.q) + " u=" + std::to_string(u) + " b=" + std::to_string(b));
            k = 4;
            b = f.q();
          }
        }
      }
    }
  }

  const Field a = Field::build(3, 3);
  const Field b = Field::with_modulus(3, {1, 2, 0, 1});
  if (a.modulus() == b.modulus()) o.fail("moduli coincide");
  const auto phi = field_isomorphism(a, b);
  for (std::uint32_t u = 0; u < 27; ++u) {
    const auto sa = differential_spectrum(FunctionTable::nh(a, {2, Element{u}}));
    const auto sb = differential_spectrum(FunctionTable::nh(b, {2, Element{phi[u]}}));
    if (sa.omega != sb.omega || sa.locally_apn != sb.locally_apn) o.fail("q=27 u=" + std::to_string(u));
    if (a.eta(Element{u}) != b.eta(Element{phi[u]})) o.fail("q=27 eta u=" + std::to_string(u));
  }

  std::size_t partitions = 0;
  for (const auto& pp : orders(7, 100001, 4, 3)) {
    const Field f = Field::build(pp.p, pp.n, FieldOptions{1u << 22, 0, 0});
    const auto part = cij_partition(f);
    const std::uint64_t small = (f.q() - 3) / 4;
    if (part.count(0, 0) != small || part.count(1, 0) != small || part.count(1, 1) != small ||
        part.count(0, 1) != (f.q() + 1) / 4) {
      o.fail("C_ij " + qs(pp.q));
    }
    ++partitions;
  }

  SweepConfig cfg;
  cfg.claims = all_claims();
  cfg.min = 3;
  cfg.max = 700;
  cfg.jobs = 1;
  const auto serial = sweep(cfg);
  for (unsigned jobs : {2u, 8u}) {
    cfg.jobs = jobs;
    const auto parallel = sweep(cfg);
    if (to_csv(parallel) != to_csv(serial) || to_json(parallel) != to_json(serial)) {
      o.fail("sweep differs with " + std::to_string(jobs) + " workers");
    }
  }
  o.summary = "reduced/full and +-u for q <= 199, class counts for q <= 499, q = 27 moduli, " +
              std::to_string(partitions) + " C_ij partitions, sweeps with 1/2/8 workers";
  return o;
}

// 9. Witness census formulas.
Outcome census() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& pp : orders(11, 2001, 4, 3)) {
    const auto c = lambda_census(field_of(pp));
    if (!c.lambda1_formula) o.fail("Lambda1 " + qs(pp.q));
    if (!c.lambda2_formula) o.fail("Lambda2 " + qs(pp.q));
    ++n;
  }
  o.summary = std::to_string(n) + " fields, 11 <= q <= 2000";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"closed-form differential spectrum of F_{2,1}", closed_form_spectra},
      {"lower-bound constants", bound_constants},
      {"delta 3 for u = +-1/3, q = 7 (mod 8)", third_seven_mod_8},
      {"delta 4 for u = +-1/3, q = 3 (mod 8)", third_three_mod_8},
      {"family uniformity in the suggested ranges", family_ranges},
      {"boomerang uniformity of F_{2,1}", boomerang},
      {"character-sum oracle suite", character_sums},
      {"structural properties", structure},
      {"witness census formulas", census},
  };

  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    const std::size_t k = std::strtoul(argv[i], nullptr, 10);
    if (k < 1 || k > criteria.size()) {
      std::cerr << "unknown criterion '" << argv[i] << "'\n";
      return 2;
    }
    selected.push_back(k);
  }
  if (selected.empty()) {
    for (std::size_t k = 1; k <= criteria.size(); ++k) selected.push_back(k);
  }

  bool all = true;
  for (std::size_t k : selected) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k - 1].second();
    } catch (const std::exception& e) {
      o.fail(std::string("error: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k << ": " << criteria[k - 1].first << " ("
              << o.summary << "; " << timing << ")\n";
    for (const auto& f : o.findings) std::cout << "    " << f << '\n';
    std::cout.flush();
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
