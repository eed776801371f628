#include "doctest.h"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "nhdiff/verifier.hpp"
#include "oracles.hpp"

using nhdiff::ClaimId;
using nhdiff::Element;
using nhdiff::Errc;
using nhdiff::Field;
using nhdiff::PrimePower;
using nhdiff::ReportRow;
using nhdiff::RowStatus;
using nhdiff::USelector;

namespace {

std::vector<std::uint32_t> orders(const std::vector<PrimePower>& v) {
  std::vector<std::uint32_t> out;
  for (const auto& pp : v) out.push_back(pp.q);
  return out;
}

PrimePower power_of(std::uint32_t q) {
  for (const auto& pp : oracle::prime_powers(q, q + 1)) return {pp.p, pp.n, pp.q};
  return {};
}

std::uint64_t oracle_uniformity(std::uint32_t q, unsigned r, std::uint32_t u) {
  const auto pp = power_of(q);
  const Field f = Field::build(pp.p, pp.n);
  const oracle::Gf g(f.p(), f.n() == 1 ? std::vector<std::uint32_t>{} : f.modulus());
  return oracle::ddt_spectrum(g, oracle::nh_table(g, r, u)).rbegin()->first;
}

template <class Fn>
Errc error_of(Fn&& fn) {
  try {
    fn();
  } catch (const nhdiff::Error& e) {
    return e.code();
  }
  return Errc::internal;
}

}  // namespace

TEST_CASE("prime-power enumeration") {
  using nhdiff::Congruence;
  CHECK(orders(nhdiff::enumerate_prime_powers(7, 50, {{Congruence{4, 3}}, {}})) ==
        std::vector<std::uint32_t>{7, 11, 19, 23, 27, 31, 43, 47});
  CHECK(orders(nhdiff::enumerate_prime_powers(7, 50, {{Congruence{8, 7}}, {}})) ==
        std::vector<std::uint32_t>{7, 23, 31, 47});
  CHECK(orders(nhdiff::enumerate_prime_powers(7, 8, {{Congruence{4, 3}}, {}})) == std::vector<std::uint32_t>{7});
  CHECK(nhdiff::enumerate_prime_powers(10, 10).empty());
  CHECK(orders(nhdiff::enumerate_prime_powers(2, 30, {{}, {2, 3}})) ==
        std::vector<std::uint32_t>{5, 7, 11, 13, 17, 19, 23, 25, 29});

  for (std::uint32_t m : {1u, 4u, 8u}) {
    for (std::uint32_t r = 0; r < m; ++r) {
      const auto got = nhdiff::enumerate_prime_powers(3, 5000, {{Congruence{m, r}}, {}});
      std::vector<std::uint32_t> expected;
      for (const auto& pp : oracle::prime_powers(3, 5000, m, r)) expected.push_back(pp.q);
      REQUIRE(orders(got) == expected);
      for (const auto& pp : got) {
        std::uint64_t v = 1;
        for (std::uint32_t i = 0; i < pp.n; ++i) v *= pp.p;
        REQUIRE(v == pp.q);
        REQUIRE(oracle::is_prime(pp.p));
      }
    }
  }
  CHECK(error_of([] { (void)nhdiff::enumerate_prime_powers(3, 1ull << 33); }) == Errc::overflow);
}

TEST_CASE("claim names and parsing") {
  CHECK(nhdiff::all_claims().size() == 9);
  CHECK(nhdiff::parse_claims("all") == nhdiff::all_claims());
  CHECK(nhdiff::parse_claims("THM5,thm2") == std::vector<ClaimId>{ClaimId::THM2_DELTA5, ClaimId::THM5_DELTA3});
  CHECK(nhdiff::parse_claims("SPEC_F21, boom") == std::vector<ClaimId>{ClaimId::SPEC_F21, ClaimId::BOOM_F21});
  CHECK(nhdiff::parse_claims("remark_11_19_43") == std::vector<ClaimId>{ClaimId::REMARK_11_19_43});
  CHECK(error_of([] { (void)nhdiff::parse_claims("THM9"); }) == Errc::invalid_argument);
  CHECK(error_of([] { (void)nhdiff::parse_claims(" , "); }) == Errc::invalid_argument);
  for (ClaimId c : nhdiff::all_claims()) CHECK(nhdiff::parse_claims(nhdiff::claim_name(c)).front() == c);
}

TEST_CASE("claim hypotheses") {
  CHECK(nhdiff::claim_accepts(ClaimId::THM2_DELTA5, 7, 7));
  CHECK_FALSE(nhdiff::claim_accepts(ClaimId::THM2_DELTA5, 13, 13));
  CHECK(nhdiff::claim_accepts(ClaimId::THM5_DELTA3, 23, 23));
  CHECK_FALSE(nhdiff::claim_accepts(ClaimId::THM5_DELTA3, 7, 7));
  CHECK_FALSE(nhdiff::claim_accepts(ClaimId::THM5_DELTA3, 19, 19));
  CHECK(nhdiff::claim_accepts(ClaimId::THM6_DELTA4, 59, 59));
  CHECK_FALSE(nhdiff::claim_accepts(ClaimId::THM6_DELTA4, 43, 43));
  CHECK_FALSE(nhdiff::claim_accepts(ClaimId::THM6_DELTA4, 3, 243));
  CHECK(nhdiff::claim_accepts(ClaimId::APN_Q7, 7, 7));
  CHECK_FALSE(nhdiff::claim_accepts(ClaimId::APN_Q7, 11, 11));
  for (std::uint32_t q : {11u, 19u, 43u}) CHECK(nhdiff::claim_accepts(ClaimId::REMARK_11_19_43, q, q));
  CHECK_FALSE(nhdiff::claim_accepts(ClaimId::REMARK_11_19_43, 3, 27));
  CHECK_FALSE(nhdiff::claim_accepts(ClaimId::SPEC_F21, 7, 7));
  CHECK(nhdiff::claim_accepts(ClaimId::LEMMA_SUITE, 3, 27));
}

TEST_CASE("parameter tokens") {
  const Field f11 = Field::build(11, 1);
  CHECK(nhdiff::resolve_u_token(f11, "1/3") == Element{4});
  CHECK(nhdiff::resolve_u_token(f11, "-1/3") == Element{7});
  CHECK(nhdiff::resolve_u_token(f11, "+2") == Element{2});
  CHECK(nhdiff::resolve_u_token(f11, "-1") == Element{10});
  CHECK(nhdiff::resolve_u_token(f11, " 5 ") == Element{5});
  CHECK(error_of([&] { (void)nhdiff::resolve_u_token(f11, "11"); }) != Errc::internal);
  CHECK(error_of([&] { (void)nhdiff::resolve_u_token(f11, "x"); }) == Errc::invalid_argument);
  CHECK(error_of([&] { (void)nhdiff::resolve_u_token(f11, ""); }) == Errc::invalid_argument);
  CHECK(error_of([&] { (void)nhdiff::resolve_u_token(f11, "1/0"); }) == Errc::unsupported_parameter);
  const Field f27 = Field::build(3, 3);
  CHECK(error_of([&] { (void)nhdiff::resolve_u_token(f27, "1/3"); }) == Errc::unsupported_parameter);
  CHECK(nhdiff::resolve_u_token(f27, "-1") == Element{2});
  CHECK(nhdiff::resolve_u_token(f27, "26") == Element{26});
}

TEST_CASE("parameter selectors") {
  CHECK(USelector::parse("auto").mode == USelector::Mode::automatic);
  CHECK(USelector::parse("").mode == USelector::Mode::automatic);
  CHECK(USelector::parse("all").mode == USelector::Mode::all);
  const auto s = USelector::parse("sample:8:42");
  CHECK(s.mode == USelector::Mode::sampled);
  CHECK(s.per_class == 8);
  CHECK(s.seed == 42);
  CHECK(s.describe() == "sample:8:42");
  const auto fx = USelector::parse("fixed:1/3,5");
  CHECK(fx.tokens == std::vector<std::string>{"1/3", "5"});
  CHECK(fx.describe() == "fixed:1/3,5");
  for (const char* bad : {"sample:0:1", "sample:3", "fixed:", "sometimes"}) {
    CHECK(error_of([&] { (void)USelector::parse(bad); }) == Errc::invalid_argument);
  }
}

TEST_CASE("third-parameter claims on small fields") {
  const auto rows = nhdiff::verify_claim(ClaimId::THM5_DELTA3, power_of(23));
  REQUIRE(rows.size() == 2);
  std::set<std::string> notes;
  for (const auto& r : rows) {
    CHECK(r.status == RowStatus::pass);
    CHECK(r.computed == "3");
    CHECK(std::to_string(oracle_uniformity(23, 2, *r.u_code)) == r.computed);
    notes.insert(r.note);
  }
  CHECK(notes == std::set<std::string>{"u=1/3", "u=-1/3"});

  for (const auto& r : nhdiff::verify_claim(ClaimId::APN_Q7, power_of(7))) {
    CHECK(r.status == RowStatus::pass);
    CHECK(r.computed == "2");
  }
  for (std::uint32_t q : {11u, 19u, 43u}) {
    for (const auto& r : nhdiff::verify_claim(ClaimId::REMARK_11_19_43, power_of(q))) {
      CHECK(r.status == RowStatus::pass);
      CHECK(std::to_string(oracle_uniformity(q, 2, *r.u_code)) == r.computed);
    }
  }
  const auto outside = nhdiff::verify_claim(ClaimId::THM5_DELTA3, power_of(19));
  REQUIRE(outside.size() == 1);
  CHECK(outside[0].status == RowStatus::skipped);
  CHECK_FALSE(outside[0].u_code.has_value());
}

TEST_CASE("family claims match brute-force uniformity") {
  for (std::uint32_t q : {11u, 19u, 23u, 27u, 31u, 43u}) {
    for (ClaimId c : {ClaimId::THM2_DELTA5, ClaimId::THM3_DELTA4}) {
      const auto rows = nhdiff::verify_claim(c, power_of(q));
      for (const auto& r : rows) {
        if (!r.u_code) continue;
        CAPTURE(q);
        CAPTURE(*r.u_code);
        CHECK(std::to_string(oracle_uniformity(q, 2, *r.u_code)) == r.computed);
        const std::uint64_t cap = c == ClaimId::THM2_DELTA5 ? 5 : 4;
        CHECK((r.status != RowStatus::exception || std::stoull(r.computed) > cap) == true);
      }
    }
  }
}

TEST_CASE("fixed parameters outside the hypotheses are skipped") {
  const auto rows = nhdiff::verify_claim(ClaimId::THM3_DELTA4, power_of(27), USelector::parse("fixed:1/3,-1,5"));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].status == RowStatus::skipped);
  CHECK_FALSE(rows[0].u_code.has_value());
  CHECK(rows[1].status == RowStatus::skipped);
  CHECK(rows[1].u_code == std::optional<std::uint32_t>{2});
}

TEST_CASE("sampled selection is deterministic and bounded") {
  const auto sel = USelector::parse("sample:4:9");
  const auto a = nhdiff::verify_claim(ClaimId::THM3_DELTA4, power_of(283), sel);
  const auto b = nhdiff::verify_claim(ClaimId::THM3_DELTA4, power_of(283), sel);
  REQUIRE(a.size() == b.size());
  CHECK(a.size() <= 8 * 4);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].u_code == b[i].u_code);
  CHECK(std::is_sorted(a.begin(), a.end(), [](const ReportRow& x, const ReportRow& y) { return x.u_code < y.u_code; }));
  const auto all = nhdiff::verify_claim(ClaimId::THM3_DELTA4, power_of(283), USelector::parse("all"));
  CHECK(all.size() > a.size());
}

TEST_CASE("spectrum, boomerang and lemma rows") {
  for (std::uint32_t q : {11u, 19u, 23u, 27u, 31u}) {
    for (const auto& r : nhdiff::verify_claim(ClaimId::SPEC_F21, power_of(q))) {
      CHECK(r.status == RowStatus::pass);
      CHECK(r.note == "full table");
    }
    const auto lemma = nhdiff::verify_claim(ClaimId::LEMMA_SUITE, power_of(q));
    REQUIRE(lemma.size() == 1);
    CHECK(lemma[0].status == RowStatus::pass);
    CHECK(lemma[0].note.empty());
  }
  for (const auto& r : nhdiff::verify_claim(ClaimId::BOOM_F21, power_of(311))) {
    CHECK(r.status == RowStatus::pass);
    CHECK(r.computed == "2");
  }
}

TEST_CASE("witness census") {
  const auto c11 = nhdiff::lambda_census(Field::build(11, 1));
  CHECK(c11.T == -2);
  CHECK(c11.eta2 == -1);
  CHECK(c11.lambda1 == 1);
  CHECK(c11.lambda2 == 1);
  CHECK(c11.ok());

  const auto c = nhdiff::lambda_census(Field::build(3607, 1));
  CHECK(c.ok());
  REQUIRE(c.third_seven_mod_8.has_value());
  CHECK(*c.third_seven_mod_8 > 0);
  CHECK_FALSE(c.third_three_mod_8.has_value());
  CHECK(c.lambda1 + c.lambda2 - c.overlap == c.delta_two);

  const auto c27 = nhdiff::lambda_census(Field::build(3, 3));
  CHECK_FALSE(c27.third_seven_mod_8.has_value());
  CHECK_FALSE(c27.third_three_mod_8.has_value());

  CHECK(error_of([] { (void)nhdiff::lambda_census(Field::build(7, 1)); }) == Errc::unsupported_parameter);
  CHECK(error_of([] { (void)nhdiff::lambda_census(Field::build(13, 1)); }) == Errc::unsupported_field);
}

TEST_CASE("chunking") {
  CHECK(nhdiff::split_evenly(10, 3) == std::vector<std::size_t>{0, 4, 7, 10});
  CHECK(nhdiff::split_evenly(2, 4) == std::vector<std::size_t>{0, 1, 2, 2, 2});
  CHECK(nhdiff::split_evenly(5, 0) == std::vector<std::size_t>{0, 5});
  for (std::size_t n = 0; n < 40; ++n) {
    for (std::size_t k = 1; k < 9; ++k) {
      const auto b = nhdiff::split_evenly(n, k);
      REQUIRE(b.size() == k + 1);
      REQUIRE(b.back() == n);
      for (std::size_t i = 0; i < k; ++i) {
        const auto len = b[i + 1] - b[i];
        REQUIRE((len == n / k || len == n / k + 1));
      }
    }
  }
}

TEST_CASE("sweeps are independent of the number of threads") {
  nhdiff::SweepConfig cfg;
  cfg.claims = nhdiff::all_claims();
  cfg.min = 3;
  cfg.max = 260;
  cfg.jobs = 1;
  const auto one = nhdiff::sweep(cfg);
  cfg.jobs = 4;
  const auto four = nhdiff::sweep(cfg);
  CHECK(nhdiff::to_csv(one) == nhdiff::to_csv(four));
  CHECK(nhdiff::to_json(one) == nhdiff::to_json(four));
  CHECK(nhdiff::to_text(one) == nhdiff::to_text(four));
  CHECK(one.errors.empty());

  std::set<std::uint32_t> qs;
  for (const auto& r : one.rows) {
    CHECK(r.q % 4 == 3);
    CHECK(r.elapsed_ms == 0.0);
    qs.insert(r.q);
  }
  CHECK(qs.count(7) == 1);
  CHECK(qs.count(259) == 0);
  CHECK(std::is_sorted(one.rows.begin(), one.rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return a.q < b.q;
  }));

  cfg.jobs = 0;
  CHECK(error_of([&] { (void)nhdiff::sweep(cfg); }) == Errc::invalid_argument);
  cfg.jobs = 1;
  cfg.claims.clear();
  CHECK(error_of([&] { (void)nhdiff::sweep(cfg); }) == Errc::invalid_argument);
}

TEST_CASE("report formats") {
  nhdiff::SweepConfig cfg;
  cfg.claims = {ClaimId::THM5_DELTA3, ClaimId::APN_Q7};
  cfg.min = 7;
  cfg.max = 40;
  const auto rep = nhdiff::sweep(cfg);
  const std::string csv = nhdiff::to_csv(rep);
  CHECK(csv.rfind("q,p,n,u_code,claim_id,computed,expected,status,elapsed_ms\n", 0) == 0);
  CHECK(csv.find("7,7,1,2,APN_Q7,2,2,pass,0\n") != std::string::npos);
  CHECK(csv.find("23,23,1,8,THM5_DELTA3,3,3,pass,0\n") != std::string::npos);

  const auto j = nlohmann::json::parse(nhdiff::to_json(rep));
  CHECK(j["summary"]["pass"] == rep.summary().pass);
  CHECK(j["summary"]["exception"] == 0);
  CHECK(j["config"]["claims"].size() == 2);
  CHECK(j["rows"].size() == rep.rows.size());
  CHECK(j["config"]["u_mode"] == "auto");

  const std::string text = nhdiff::to_text(rep);
  CHECK(text.find("THM5_DELTA3: pass=4 exception=0 skipped=0\n") != std::string::npos);
  CHECK(text.find("total: pass=6 exception=0 skipped=0 errors=0\n") != std::string::npos);

  nhdiff::SweepReport manual;
  manual.config.claims = {ClaimId::THM2_DELTA5, ClaimId::THM5_DELTA3, ClaimId::BOOM_F21, ClaimId::SPEC_F21};
  ReportRow a;
  a.q = 4211;
  a.p = 4211;
  a.n = 1;
  a.u_code = 999;
  a.claim = ClaimId::THM2_DELTA5;
  a.computed = "4";
  a.status = RowStatus::exception;
  ReportRow b = a;
  b.claim = ClaimId::THM5_DELTA3;
  b.note = "u=1/3";
  ReportRow c = a;
  c.claim = ClaimId::BOOM_F21;
  c.computed = "3";
  ReportRow d = a;
  d.claim = ClaimId::SPEC_F21;
  d.computed = "0:1";
  d.u_code.reset();
  manual.rows = {a, b, c, d};
  manual.errors = {"q=4219, THM2_DELTA5: boom"};
  const std::string mt = nhdiff::to_text(manual);
  CHECK(mt.find("Exception: q=4211, differential uniformity=4, u=999\n") != std::string::npos);
  CHECK(mt.find("Exception: q=4211, differential uniformity=4\n") != std::string::npos);
  CHECK(mt.find("Exception: q=4211, boomerang uniformity=3, u=999\n") != std::string::npos);
  CHECK(mt.find("Exception: q=4211, claim=SPEC_F21, computed=0:1\n") != std::string::npos);
  CHECK(mt.find("Error: q=4219, THM2_DELTA5: boom\n") != std::string::npos);
  CHECK_FALSE(manual.ok());

  manual.config.timing = true;
  manual.rows[0].elapsed_ms = 1.5;
  CHECK(nhdiff::to_csv(manual).find(",exception,1.500\n") != std::string::npos);
}
