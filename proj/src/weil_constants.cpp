#include <cmath>
#include <string>
#include <vector>

#include "nhdiff/characters.hpp"

namespace nhdiff {

namespace {

// Subsets of {1..k} are bitmasks; element i is bit (i - 1).
constexpr unsigned bit(unsigned i) { return 1u << (i - 1); }

struct Accumulator {
  std::vector<int> degrees;
  std::int64_t m1 = 0;
  double m2 = 0.0;

  unsigned subset_count() const { return 1u << degrees.size(); }

  int degree_of(unsigned mask) const {
    int d = 0;
    for (unsigned i = 0; i < degrees.size(); ++i) {
      if (mask & (1u << i)) d += degrees[i];
    }
    return d;
  }

  // Plain Weil estimate for a polynomial character sum in one variable.
  void polynomial_term(int d_gamma) { m1 += -2 * d_gamma; }

  // Curve estimate for the sum twisted by a factor (z + a).
  void curve_term(int deg_phi, int deg_rho, int multiplicity) {
    const int deg_omega = deg_rho == 0 ? std::max(4, 2 + 2 * deg_phi) : 4 + 2 * deg_phi;
    for (int i = 0; i < multiplicity; ++i) {
      m1 += -static_cast<std::int64_t>(deg_omega - 1) * (deg_omega - 2);
      m2 += -5.0 * std::pow(static_cast<double>(deg_omega), 13.0 / 3.0) - deg_phi - 1;
    }
  }
};

LowerBoundConstants finish(std::string which, const Accumulator& acc, std::int64_t exceptional) {
  LowerBoundConstants out;
  out.which = std::move(which);
  out.m1 = acc.m1;
  out.m2_real = acc.m2;
  out.m2 = static_cast<std::int64_t>(std::floor(acc.m2));
  out.exceptional_term = exceptional;
  return out;
}

LowerBoundConstants family_bound() {
  Accumulator acc{{1, 1, 1, 1, 2, 2}};
  const unsigned n = acc.subset_count();
  // no z-factor
  for (unsigned s = 1; s < n; ++s) acc.polynomial_term(acc.degree_of(s));
  // one z-factor, four choices
  for (unsigned s = 0; s < n; ++s) acc.curve_term(acc.degree_of(s), 0, 4);
  // three z-factors, four choices, two extra y-degrees
  for (unsigned s = 0; s < n; ++s) acc.curve_term(acc.degree_of(s) + 2, 0, 4);
  // all four z-factors
  for (unsigned s = 0; s < n; ++s) {
    if (s == (bit(5) | bit(6))) continue;
    int d = acc.degree_of(s) + 4;
    if (s & bit(5)) d -= 2;
    if (s & bit(6)) d -= 2;
    acc.polynomial_term(d);
  }
  // two z-factors forming a product that is a polynomial in y
  for (unsigned fixed : {5u, 6u}) {
    for (unsigned s = 0; s < n; ++s) {
      if (s == bit(fixed)) continue;
      int d = acc.degree_of(s) + 2;
      if (s & bit(fixed)) d -= 2;
      acc.polynomial_term(d);
    }
  }
  // remaining two-factor pairs
  for (unsigned s = 0; s < n; ++s) acc.curve_term(acc.degree_of(s), 2, 4);
  return finish("thm2", acc, 0);
}

LowerBoundConstants third_parameter_bound() {
  Accumulator acc{{1, 1, 1, 1, 2}};
  const unsigned n = acc.subset_count();
  for (unsigned s = 1; s < n; ++s) {
    if (s == (bit(1) | bit(2))) continue;
    acc.polynomial_term(acc.degree_of(s));
  }
  for (unsigned s = 0; s < n; ++s) acc.curve_term(acc.degree_of(s), 0, 2);
  for (unsigned s = 0; s < n; ++s) {
    if (s == bit(5) || s == (bit(1) | bit(2) | bit(5))) continue;
    int d = acc.degree_of(s) + 2;
    if (s & bit(5)) d -= 2;
    acc.polynomial_term(d);
  }
  return finish("thm6", acc, 0);
}

LowerBoundConstants boomerang_bound() {
  Accumulator acc{{1, 1, 1, 2, 2}};
  const unsigned n = acc.subset_count();
  for (unsigned s = 1; s < n; ++s) acc.polynomial_term(acc.degree_of(s));
  for (unsigned s = 0; s < n; ++s) acc.curve_term(acc.degree_of(s), 0, 2);
  for (unsigned s = 0; s < n; ++s) acc.curve_term(acc.degree_of(s), 2, 1);
  // Correction for the exceptional points removed before the estimate.
  return finish("boom", acc, -2 * (1 << 7));
}

}  // namespace

LowerBoundConstants lower_bound_constants(std::string_view which) {
  if (which == "thm2") return family_bound();
  if (which == "thm6") return third_parameter_bound();
  if (which == "boom") return boomerang_bound();
  throw Error(Errc::invalid_argument, "unknown constant set '" + std::string(which) + "' (expected thm2, thm6 or boom)");
}

}  // namespace nhdiff
