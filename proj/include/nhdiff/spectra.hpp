#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nhdiff/field.hpp"
#include "nhdiff/nh_family.hpp"

namespace nhdiff {

/// Explicit value table of a map F_q -> F_q, indexed by element code.
/// Keeps a pointer to its field, which must outlive the table.
class FunctionTable {
 public:
  FunctionTable(const Field& field, std::vector<Element> values);

  static FunctionTable nh(const Field& field, const NHParams& params);

  template <class Fn>
  static FunctionTable from_function(const Field& field, Fn&& fn) {
    std::vector<Element> v(field.q());
    for (std::uint32_t x = 0; x < field.q(); ++x) v[x] = fn(Element{x});
    return FunctionTable(field, std::move(v));
  }

  const Field& field() const noexcept { return *field_; }
  const std::vector<Element>& values() const noexcept { return values_; }
  Element operator()(Element x) const noexcept { return values_[x.code]; }

 private:
  const Field* field_;
  std::vector<Element> values_;
};

/// Sparse count map i -> number of (a, b) pairs with entry i.
using SpectrumCounts = std::map<std::uint64_t, std::uint64_t>;

struct DifferentialSpectrum {
  std::uint32_t q = 0;
  SpectrumCounts omega;  // omega[0] always present
  std::uint64_t uniformity = 0;
  bool locally_apn = false;
};

struct BoomerangSpectrum {
  std::uint32_t q = 0;
  SpectrumCounts nu;
  std::uint64_t uniformity = 0;
};

std::uint64_t ddt_entry(const FunctionTable& table, Element a, Element b);

/// All of delta(a, .) for one nonzero a.
std::vector<std::uint32_t> ddt_row(const FunctionTable& table, Element a);

/// Full (q-1) x q aggregation, or, when `reduction` is given, the a = 1 row
/// expanded over all a (requires q = 3 mod 4 and a table equal to F_{r,u}).
DifferentialSpectrum differential_spectrum(const FunctionTable& table,
                                           const std::optional<NHParams>& reduction = std::nullopt);

/// Values of b that do not count toward the locally-APN condition: the prime
/// subfield for extension fields, {0} for prime fields.
bool locally_apn_excluded(const Field& field, Element b) noexcept;

/// max{delta(a, b) : a != 0, b not excluded} == 2, by full enumeration.
bool locally_apn_check(const FunctionTable& table);

/// Boomerang count via a hash of (f(y), D_a f(y)); O(q).
std::uint64_t bct_entry(const FunctionTable& table, Element a, Element b);
/// Boomerang count by enumeration of all (x, y); O(q^2).
std::uint64_t bct_entry_pairs(const FunctionTable& table, Element a, Element b);
/// All of beta(a, .) for one nonzero a, grouping x by D_a f(x).
std::vector<std::uint64_t> bct_row(const FunctionTable& table, Element a);

BoomerangSpectrum boomerang_spectrum(const FunctionTable& table,
                                     const std::optional<NHParams>& reduction = std::nullopt);

/// sum over y of eta((y + 1)(y^2 + 1)).
std::int64_t cubic_character_sum(const Field& field);

/// Closed-form differential spectrum of F_{2,1}; needs q = 3 (mod 4), q > 7.
DifferentialSpectrum closed_form_spectrum_F21(const Field& field);

/// Counting identities: sum omega_i = sum i omega_i = q(q-1), and the
/// uniformity equals the largest populated i.
bool spectrum_identities_hold(const DifferentialSpectrum& s);
bool spectrum_identities_hold(const BoomerangSpectrum& s);

/// counts[2i+j][2k+l] = solutions (x, y) in C_ij x C_kl of the F_{2,1}
/// boomerang system with a = 1, from the closed case conditions.
struct PairClassCounts {
  std::array<std::array<std::uint64_t, 4>, 4> counts{};
  std::uint64_t total() const noexcept;
};

PairClassCounts boomerang_case_counts_F21(const Field& field, Element b);

/// "i:count;..." in ascending i.
std::string spectrum_string(const SpectrumCounts& counts);

/// Family parameters echoed into serialized spectra.
struct SpectrumLabel {
  unsigned r = 2;
  std::uint32_t u_code = 0;
};

/// {"q", "r", "u", "delta", "spectrum": {"i": count}, "locally_apn"}
std::string to_json(const DifferentialSpectrum& s, const SpectrumLabel& label, int indent = -1);
/// {"q", "r", "u", "beta", "spectrum": {"i": count}}
std::string to_json(const BoomerangSpectrum& s, const SpectrumLabel& label, int indent = -1);

DifferentialSpectrum differential_spectrum_from_json(const std::string& text);
BoomerangSpectrum boomerang_spectrum_from_json(const std::string& text);

}  // namespace nhdiff
