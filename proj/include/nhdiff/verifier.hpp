#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nhdiff/field.hpp"

namespace nhdiff {

enum class ClaimId {
  THM2_DELTA5,
  THM3_DELTA4,
  THM5_DELTA3,
  THM6_DELTA4,
  SPEC_F21,
  BOOM_F21,
  APN_Q7,
  REMARK_11_19_43,
  LEMMA_SUITE,
};

const char* claim_name(ClaimId id) noexcept;
const std::vector<ClaimId>& all_claims();
/// Accepts full names, the part before the first underscore ("THM5"), and
/// "all"; case-insensitive. Comma separated.
std::vector<ClaimId> parse_claims(std::string_view list);

/// True when q lies inside the claim's hypotheses.
bool claim_accepts(ClaimId id, std::uint32_t p, std::uint32_t q);

struct Congruence {
  std::uint32_t modulus = 1;
  std::uint32_t residue = 0;
};

struct PrimePowerFilter {
  std::vector<Congruence> congruences;
  std::vector<std::uint32_t> excluded_primes;
};

struct PrimePower {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint32_t q = 0;
};

/// All prime powers q with min <= q < max passing every filter, ascending.
std::vector<PrimePower> enumerate_prime_powers(std::uint64_t min, std::uint64_t max,
                                               const PrimePowerFilter& filter = {});

/// Resolves a parameter token in the field: "7" is an element code,
/// "+2" / "-1" are integers, "1/3" / "-1/3" are rationals.
Element resolve_u_token(const Field& field, std::string_view token);

/// How parameters u are chosen for the family-wide claims.
struct USelector {
  enum class Mode { automatic, all, sampled, fixed };
  Mode mode = Mode::automatic;
  std::uint32_t per_class = 64;
  std::uint64_t seed = 1;
  std::vector<std::string> tokens;
  /// automatic mode is exhaustive up to this q, sampled above.
  std::uint32_t exhaustive_limit = 2000;

  /// "auto", "all", "sample:K:SEED" or "fixed:TOKEN,TOKEN".
  static USelector parse(std::string_view text);
  std::string describe() const;
};

enum class RowStatus { pass, exception, skipped };
const char* status_name(RowStatus s) noexcept;

struct ReportRow {
  std::uint32_t q = 0;
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::optional<std::uint32_t> u_code;
  ClaimId claim = ClaimId::LEMMA_SUITE;
  std::string computed;
  std::string expected;
  RowStatus status = RowStatus::pass;
  std::string note;
  double elapsed_ms = 0.0;
};

std::vector<ReportRow> verify_claim(ClaimId claim, const PrimePower& pp, const USelector& selector = {});

struct SweepConfig {
  std::vector<ClaimId> claims;
  std::uint64_t min = 3;
  std::uint64_t max = 100;
  unsigned jobs = 1;
  USelector selector;
  /// Record wall-clock time per row; off keeps reports reproducible.
  bool timing = false;
};

struct SweepSummary {
  std::uint64_t pass = 0;
  std::uint64_t exception = 0;
  std::uint64_t skipped = 0;
};

struct SweepReport {
  SweepConfig config;
  std::vector<ReportRow> rows;
  /// "q=..., message" for every q whose evaluation threw.
  std::vector<std::string> errors;

  SweepSummary summary() const;
  bool ok() const { return summary().exception == 0 && errors.empty(); }
};

/// Splits `count` items into `parts` contiguous chunks as evenly as possible;
/// returns the chunk boundaries (parts + 1 offsets).
std::vector<std::size_t> split_evenly(std::size_t count, std::size_t parts);

SweepReport sweep(const SweepConfig& config);

std::string to_csv(const SweepReport& report);
std::string to_json(const SweepReport& report, int indent = 2);
std::string to_text(const SweepReport& report);

/// Witness-set sizes from the existence proofs, counted directly.
struct LambdaCensus {
  std::uint32_t q = 0;
  std::int64_t T = 0;
  int eta2 = 0;
  // F_{2,1}: b with delta(1, b) = 2 split by which class pair produces them.
  std::uint64_t lambda1 = 0;
  std::uint64_t lambda2 = 0;
  std::uint64_t overlap = 0;
  std::uint64_t delta_two = 0;
  bool lambda1_formula = false;
  bool lambda2_formula = false;
  bool union_identity = false;
  // F_{2,1/3}, q = 7 (mod 8): delta(1, b) = 3 witnesses.
  std::optional<std::uint64_t> third_seven_mod_8;
  std::optional<bool> third_seven_mod_8_bound;
  // F_{2,1/3}, q = 3 (mod 8), p != 3: delta(1, b) = 4 witnesses.
  std::optional<std::uint64_t> third_three_mod_8;
  std::optional<bool> third_three_mod_8_bound;
  // F_{2,1}: b with beta(1, b) = 2 from the (C_00, C_01) and (C_00, C_10) pairs.
  std::uint64_t boomerang_pairs = 0;
  bool boomerang_bound = false;

  bool ok() const;
};

/// Needs q = 3 (mod 4), q > 7.
LambdaCensus lambda_census(const Field& field);

}  // namespace nhdiff
