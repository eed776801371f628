#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nhdiff/field.hpp"
#include "nhdiff/poly.hpp"

namespace nhdiff {

/// sum over x of eta(a2 x^2 + a1 x + a0): -eta(a2) unless the discriminant
/// vanishes, in which case (q - 1) eta(a2).
std::int64_t weil_sum_quadratic_closed(const Field& field, Element a2, Element a1, Element a0);

/// Exact sum over x of eta(f(x)) by enumeration.
std::int64_t weil_sum_brute(const Field& field, const Poly& f);

/// Number of (x1, x2) with a1 x1^2 + a2 x2^2 = b, from the closed form.
std::int64_t conic_count_closed(const Field& field, Element a1, Element a2, Element b);

/// H_n(a) = sum over x of eta(x^(n+1) + a x). Prime fields only.
std::int64_t jacobsthal_sum(const Field& field, unsigned n_exp, Element a);

struct ReciprocalCheck {
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
};

/// lhs = sum eta(a x^3 + b x^2 + c x + d) eta(x);
/// rhs = -eta(a) + sum eta(d x^3 + c x^2 + b x + a).
ReciprocalCheck cubic_reciprocal_check(const Field& field, Element a, Element b, Element c, Element d);

struct WeilBoundCheck {
  std::int64_t sum = 0;
  double bound = 0.0;
  bool ok = false;
};

/// Requires f monic and squarefree of positive degree.
WeilBoundCheck weil_bound_check(const Field& field, const Poly& f);

/// #{(t, y) : F(t, y) = 0} by double enumeration.
std::uint64_t curve_point_count(const Field& field, const BivariatePoly& curve);

struct QuarticCriteria {
  bool irreducible_predicted = false;
  bool square_discriminant_zero = false;
};

/// Criteria for x^4 + A x^2 + B.
QuarticCriteria quartic_criteria(const Field& field, Element A, Element B);

/// Exhaustive search for a linear or monic quadratic factor of a monic
/// quartic (low degree first, length 5). True when one exists.
bool quartic_has_factor(const Field& field, const Poly& monic_quartic);

struct LowerBoundConstants {
  std::string which;
  std::int64_t m1 = 0;
  /// Floor of the real-valued accumulation.
  std::int64_t m2 = 0;
  double m2_real = 0.0;
  /// Extra constant from exceptional points removed before the estimate
  /// (zero when the bound needs none).
  std::int64_t exceptional_term = 0;
  std::int64_t m2_total() const noexcept { return m2 + exceptional_term; }
};

/// Constants of the combinatorial Weil lower bound sum_I S_I >= ... + m1 sqrt(q) + m2.
/// `which` is one of "thm2", "thm6", "boom".
LowerBoundConstants lower_bound_constants(std::string_view which);

struct SelftestRow {
  std::string check;
  std::uint32_t q = 0;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
};

/// Closed forms against enumeration for every odd prime power q <= qmax.
std::vector<SelftestRow> charsum_selftest(std::uint32_t qmax, std::uint64_t seed = 1);

}  // namespace nhdiff
