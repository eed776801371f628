#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "nhdiff/error.hpp"

namespace nhdiff {

// An element of F_{p^n}, encoded as code = sum c_i p^i for the residue
// polynomial sum c_i x^i modulo the field's defining polynomial.
struct Element {
  std::uint32_t code = 0;

  friend constexpr bool operator==(Element, Element) = default;
  friend constexpr auto operator<=>(Element, Element) = default;
};

struct FieldOptions {
  // Dense quadratic-character table up to this order.
  std::uint64_t eta_table_max = std::uint64_t{1} << 22;
  // Log/antilog tables for extension fields up to this order.
  std::uint64_t log_table_max = std::uint64_t{1} << 20;
  // Full q*q addition table for extension fields up to this order.
  std::uint64_t add_table_max = 1024;
};

/// Finite field F_{p^n} with odd characteristic.
///
/// Immutable after construction; every method is const and thread safe.
/// For n > 1 the defining polynomial is the lexicographically smallest
/// monic irreducible of degree n (coefficients compared from the constant
/// term upward) unless one is supplied through with_modulus().
class Field {
 public:
  static Field build(std::uint32_t p, std::uint32_t n, const FieldOptions& options = {});

  /// `modulus` is monic, low degree first, of length n + 1.
  static Field with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus,
                            const FieldOptions& options = {});

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t q() const noexcept { return q_; }
  /// Empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  Element generator() const noexcept { return generator_; }
  bool has_eta_table() const noexcept { return !eta_table_.empty(); }
  bool is_3_mod_4() const noexcept { return q_ % 4 == 3; }

  Element zero() const noexcept { return {0}; }
  Element one() const noexcept { return {1}; }
  /// Checked conversion of a raw code.
  Element element(std::uint64_t code) const;
  /// Image of an integer in the prime subfield.
  Element from_int(std::int64_t value) const noexcept;
  bool in_prime_subfield(Element x) const noexcept { return x.code < p_; }

  Element add(Element a, Element b) const noexcept {
    if (n_ == 1) {
      std::uint64_t s = std::uint64_t{a.code} + b.code;
      return {static_cast<std::uint32_t>(s >= p_ ? s - p_ : s)};
    }
    if (!add_table_.empty()) return {add_table_[std::size_t{a.code} * q_ + b.code]};
    return {add_digits(a.code, b.code)};
  }

  Element neg(Element a) const noexcept {
    if (a.code == 0) return a;
    if (n_ == 1) return {p_ - a.code};
    return {neg_digits(a.code)};
  }

  Element sub(Element a, Element b) const noexcept { return add(a, neg(b)); }

  Element mul(Element a, Element b) const noexcept {
    if (n_ == 1) {
      return {static_cast<std::uint32_t>(std::uint64_t{a.code} * b.code % p_)};
    }
    if (a.code == 0 || b.code == 0) return {0};
    if (!exp_table_.empty()) return {exp_table_[std::size_t{log_table_[a.code]} + log_table_[b.code]]};
    return {mul_schoolbook(a.code, b.code)};
  }

  /// Throws Errc::domain for zero.
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  /// Square-and-multiply; the exponent is reduced mod q - 1 for nonzero bases.
  Element pow(Element base, std::uint64_t exponent) const noexcept;

  /// Quadratic character: 0 at zero, +1 on nonzero squares, -1 otherwise.
  int eta(Element x) const noexcept {
    if (!eta_table_.empty()) return eta_table_[x.code];
    return eta_by_power(x);
  }

  /// Canonical square root x^((q+1)/4). Requires q = 3 (mod 4).
  std::optional<Element> sqrt(Element x) const;

  /// Square root r of x with eta(r) = +1 (unique when q = 3 mod 4 and x != 0).
  std::optional<Element> square_root_in_squares(Element x) const;

 private:
  Field() = default;
  void finish_construction(const FieldOptions& options);

  std::uint32_t add_digits(std::uint32_t a, std::uint32_t b) const noexcept;
  std::uint32_t neg_digits(std::uint32_t a) const noexcept;
  std::uint32_t mul_schoolbook(std::uint32_t a, std::uint32_t b) const noexcept;
  int eta_by_power(Element x) const noexcept;

  std::uint32_t p_ = 0;
  std::uint32_t n_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  Element generator_{};
  std::vector<std::int8_t> eta_table_;
  std::vector<std::uint32_t> log_table_;
  std::vector<std::uint32_t> exp_table_;  // doubled length, no reduction on lookup
  std::vector<std::uint32_t> add_table_;
};

/// Classification of x not in {0, -1} by (eta(x), eta(x+1)).
/// Class index is 2*i + j for C_ij, with eta = (-1)^i, (-1)^j.
struct CijPartition {
  std::array<std::uint64_t, 4> counts{};
  std::vector<std::int8_t> classes;  // per code; -1 for 0 and -1

  std::uint64_t count(int i, int j) const { return counts[static_cast<std::size_t>(2 * i + j)]; }
  std::optional<int> classify(Element x) const;
};

/// Requires q = 3 (mod 4).
CijPartition cij_partition(const Field& field);

bool is_prime(std::uint64_t value) noexcept;

/// Returns p if value = p^k for a prime p, and k through `exponent`.
std::optional<std::uint32_t> prime_power_base(std::uint64_t value, std::uint32_t* exponent = nullptr) noexcept;

/// Rabin irreducibility test for a monic polynomial over Z_p (low degree first).
bool is_irreducible_mod_p(const std::vector<std::uint32_t>& monic, std::uint32_t p);

}  // namespace nhdiff
