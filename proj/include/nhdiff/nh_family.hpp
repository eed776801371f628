#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "nhdiff/field.hpp"

namespace nhdiff {

/// Parameters of F_{r,u}(x) = x^r (1 + u eta(x)).
struct NHParams {
  unsigned r = 2;
  Element u{};
};

/// Parameters outside the generic uniformity results: {0, +-1}, plus +-1/3
/// when the characteristic is not 3.
std::vector<Element> excluded_parameters(const Field& field);
bool is_excluded_parameter(const Field& field, Element u);

Element eval_F(const Field& field, const NHParams& params, Element x) noexcept;

/// F(x + a) - F(x); throws Errc::degenerate_input when a = 0.
Element derivative_value(const Field& field, const NHParams& params, Element a, Element x);

/// Solution counts of D_1 F_{2,u}(x) = b restricted to each class C_ij,
/// indexed 2i + j: {c00, c01, c10, c11}.
struct AijCounts {
  std::array<int, 4> c{};

  int c00() const noexcept { return c[0]; }
  int c01() const noexcept { return c[1]; }
  int c10() const noexcept { return c[2]; }
  int c11() const noexcept { return c[3]; }
  int sum() const noexcept { return c[0] + c[1] + c[2] + c[3]; }
  friend bool operator==(const AijCounts&, const AijCounts&) = default;
};

/// Closed-form case analysis of D_1 F_{2,u} for u outside {0, +-1}.
/// The field must outlive the analysis object.
class CaseAnalysis {
 public:
  CaseAnalysis(const Field& field, Element u);

  Element u() const noexcept { return u_; }
  Element tau1() const noexcept { return tau1_; }
  Element tau2() const noexcept { return tau2_; }
  /// Discriminant of the quadratic governing solutions in C_01.
  Element delta01(Element b) const noexcept;
  /// Discriminant of the quadratic governing solutions in C_10.
  Element delta10(Element b) const noexcept;
  /// Values of D_1 F at x = 0 and x = -1.
  Element boundary_at_zero() const noexcept { return boundary0_; }
  Element boundary_at_minus_one() const noexcept { return boundary1_; }

  AijCounts counts(Element b) const;
  /// delta(1, b) assembled from the class counts and the two boundary points.
  int delta(Element b) const;

 private:
  const Field* field_;
  Element u_, tau1_, tau2_, two_u_inv_, boundary0_, boundary1_;
  Element inv_2_1pu_, inv_2_1mu_;
  int eta2_;
};

AijCounts aij_counts_closed(const Field& field, Element u, Element b);

struct LemmaVerdict {
  std::string name;
  bool applicable = false;
  bool holds = true;
};

/// Exclusion lemmas between class counts, the boundary cap at b = u +- 1,
/// the cap of 4 when eta(1+u) = eta(1-u), and the global cap of 5.
std::vector<LemmaVerdict> structural_lemma_checks(const Field& field, Element u, Element b);

/// Fast evaluation of D_1 F_{r,u} for many u over one field:
/// D_1 F(x) = P(x) + u Q(x) with P, Q independent of u.
/// Holds a pointer to the field, which must outlive the kernel.
class DerivativeKernel {
 public:
  DerivativeKernel(const Field& field, unsigned r);

  const Field& field() const noexcept { return *field_; }
  unsigned r() const noexcept { return r_; }

  /// out[x] = D_1 F_{r,u}(x) as codes.
  void derivative_row(Element u, std::vector<std::uint32_t>& out) const;
  /// counts[b] = delta(1, b).
  void delta_row(Element u, std::vector<std::uint32_t>& counts) const;
  /// max over b of delta(1, b), which is the differential uniformity when q = 3 (mod 4).
  std::uint32_t uniformity(Element u, std::vector<std::uint32_t>& scratch_values,
                           std::vector<std::uint32_t>& scratch_counts) const;

 private:
  const Field* field_;
  unsigned r_;
  std::vector<std::uint32_t> base_;    // (x+1)^r - x^r
  std::vector<std::uint32_t> twist_;   // eta(x+1)(x+1)^r - eta(x) x^r
};

}  // namespace nhdiff
