#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

#include "nhdiff/field.hpp"

namespace nhdiff {

// Univariate polynomial over a Field, coefficients low degree first.
// Trailing zero coefficients are always stripped, so the zero polynomial
// has an empty coefficient vector.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Element> coeffs);

  /// Coefficients given as integers, reduced into the prime subfield.
  static Poly from_ints(const Field& field, std::initializer_list<std::int64_t> low_first);
  static Poly constant(Element c);
  /// The monomial c * x^k.
  static Poly monomial(Element c, unsigned k);

  const std::vector<Element>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  Element leading() const noexcept { return coeffs_.empty() ? Element{} : coeffs_.back(); }
  bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back().code == 1; }
  Element coeff(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : Element{}; }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  std::vector<Element> coeffs_;
};

Element eval(const Field& field, const Poly& f, Element x) noexcept;
Poly add(const Field& field, const Poly& f, const Poly& g);
Poly sub(const Field& field, const Poly& f, const Poly& g);
Poly mul(const Field& field, const Poly& f, const Poly& g);
Poly scale(const Field& field, const Poly& f, Element c);
Poly derivative(const Field& field, const Poly& f);

/// Quotient and remainder; throws Errc::domain when g is zero.
std::pair<Poly, Poly> divmod(const Field& field, const Poly& f, const Poly& g);

/// Monic greatest common divisor (zero when both inputs are zero).
Poly gcd(const Field& field, Poly f, Poly g);

/// gcd(f, f') == 1 with f of positive degree.
bool is_squarefree(const Field& field, const Poly& f);

// Polynomial in two variables t, y as a sparse map (i, j) -> coefficient of
// t^i y^j.
class BivariatePoly {
 public:
  using Terms = std::map<std::pair<unsigned, unsigned>, Element>;

  BivariatePoly() = default;
  explicit BivariatePoly(Terms terms);

  /// Adds c to the coefficient of t^i y^j.
  void add_term(const Field& field, unsigned i, unsigned j, Element c);

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const noexcept;

  Element eval(const Field& field, Element t, Element y) const noexcept;

 private:
  Terms terms_;
};

}  // namespace nhdiff
