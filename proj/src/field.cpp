#include "nhdiff/field.hpp"

#include <limits>
#include <string>
#include <utility>

namespace nhdiff {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::not_prime: return "not_prime";
    case Errc::even_prime: return "even_prime";
    case Errc::zero_degree: return "zero_degree";
    case Errc::overflow: return "overflow";
    case Errc::domain: return "domain";
    case Errc::unsupported_field: return "unsupported_field";
    case Errc::unsupported_parameter: return "unsupported_parameter";
    case Errc::degenerate_input: return "degenerate_input";
    case Errc::precondition: return "precondition";
    case Errc::consistency: return "consistency";
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::internal: return "internal";
  }
  return "unknown";
}

namespace {

// Dense polynomials over Z_p, low degree first, no trailing zeros.
using ZPoly = std::vector<std::uint64_t>;

void trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = result * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return result;
}

// Remainder of a modulo a nonzero polynomial f.
ZPoly zp_mod(ZPoly a, const ZPoly& f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t lead_inv = pow_mod(f.back(), p - 2, p);
  while (a.size() >= f.size()) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = (a[shift + i] + (p - f[i] * c % p)) % p;
    }
    trim(a);
  }
  return a;
}

ZPoly zp_mulmod(const ZPoly& a, const ZPoly& b, const ZPoly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  ZPoly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
  }
  return zp_mod(std::move(prod), f, p);
}

ZPoly zp_powmod(ZPoly base, std::uint64_t e, const ZPoly& f, std::uint64_t p) {
  ZPoly result{1};
  base = zp_mod(std::move(base), f, p);
  while (e > 0) {
    if (e & 1) result = zp_mulmod(result, base, f, p);
    e >>= 1;
    if (e > 0) base = zp_mulmod(base, base, f, p);
  }
  return result;
}

ZPoly zp_gcd(ZPoly a, ZPoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ZPoly r = zp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      out.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

void validate_characteristic(std::uint32_t p) {
  if (!is_prime(p)) throw Error(Errc::not_prime, "characteristic " + std::to_string(p) + " is not prime");
  if (p == 2) throw Error(Errc::even_prime, "characteristic 2 is not supported");
}

std::uint32_t checked_order(std::uint32_t p, std::uint32_t n) {
  if (n == 0) throw Error(Errc::zero_degree, "extension degree must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    q *= p;
    if (q > std::numeric_limits<std::uint32_t>::max()) {
      throw Error(Errc::overflow, "p^n does not fit a 32-bit element code");
    }
  }
  return static_cast<std::uint32_t>(q);
}

}  // namespace

bool is_prime(std::uint64_t value) noexcept {
  if (value < 2) return false;
  if (value < 4) return true;
  if (value % 2 == 0 || value % 3 == 0) return false;
  for (std::uint64_t d = 5; d * d <= value; d += 6) {
    if (value % d == 0 || value % (d + 2) == 0) return false;
  }
  return true;
}

std::optional<std::uint32_t> prime_power_base(std::uint64_t value, std::uint32_t* exponent) noexcept {
  if (value < 2) return std::nullopt;
  std::uint64_t p = value;
  for (std::uint64_t d = 2; d * d <= value; ++d) {
    if (value % d == 0) {
      p = d;
      break;
    }
  }
  std::uint32_t k = 0;
  std::uint64_t rest = value;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1 || p > std::numeric_limits<std::uint32_t>::max()) return std::nullopt;
  if (exponent != nullptr) *exponent = k;
  return static_cast<std::uint32_t>(p);
}

bool is_irreducible_mod_p(const std::vector<std::uint32_t>& monic, std::uint32_t p) {
  if (monic.size() < 2 || monic.back() != 1) return false;
  const std::size_t n = monic.size() - 1;
  if (n == 1) return true;
  const ZPoly f(monic.begin(), monic.end());
  const ZPoly x{0, 1};

  // x^(p^k) mod f for k = 1..n
  std::vector<ZPoly> frob(n + 1);
  frob[0] = x;
  for (std::size_t k = 1; k <= n; ++k) frob[k] = zp_powmod(frob[k - 1], p, f, p);
  if (frob[n] != x) return false;

  for (std::uint64_t r : prime_factors(n)) {
    ZPoly h = frob[n / r];
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    const ZPoly g = zp_gcd(f, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

Field Field::build(std::uint32_t p, std::uint32_t n, const FieldOptions& options) {
  validate_characteristic(p);
  Field field;
  field.p_ = p;
  field.q_ = checked_order(p, n);
  field.n_ = n;

  if (n > 1) {
    // Lexicographic order with the constant term most significant; a zero
    // constant term is always reducible, so start at c_0 = 1.
    std::uint64_t stride = field.q_ / p;
    bool found = false;
    for (std::uint64_t k = stride; k < field.q_ && !found; ++k) {
      std::vector<std::uint32_t> coeffs(n + 1, 0);
      coeffs[n] = 1;
      std::uint64_t rest = k;
      for (std::uint32_t i = n; i-- > 0;) {
        coeffs[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      if (is_irreducible_mod_p(coeffs, p)) {
        field.modulus_ = std::move(coeffs);
        found = true;
      }
    }
    if (!found) throw Error(Errc::internal, "no irreducible polynomial found");
  }
  field.finish_construction(options);
  return field;
}

Field Field::with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus, const FieldOptions& options) {
  validate_characteristic(p);
  if (modulus.size() < 2) throw Error(Errc::zero_degree, "modulus must have positive degree");
  if (modulus.back() != 1) throw Error(Errc::invalid_argument, "modulus must be monic");
  for (auto c : modulus) {
    if (c >= p) throw Error(Errc::invalid_argument, "modulus coefficient out of range");
  }
  const auto n = static_cast<std::uint32_t>(modulus.size() - 1);
  Field field;
  field.p_ = p;
  field.q_ = checked_order(p, n);
  field.n_ = n;
  if (n > 1) {
    if (!is_irreducible_mod_p(modulus, p)) {
      throw Error(Errc::invalid_argument, "modulus is reducible over Z_p");
    }
    field.modulus_ = std::move(modulus);
  }
  field.finish_construction(options);
  return field;
}

void Field::finish_construction(const FieldOptions& options) {
  const std::uint64_t order = q_ - 1;
  const auto factors = prime_factors(order);
  for (std::uint64_t c = 1; c < q_; ++c) {
    const Element g{static_cast<std::uint32_t>(c)};
    bool primitive = true;
    for (std::uint64_t r : factors) {
      if (pow(g, order / r) == one()) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator_ = g;
      break;
    }
  }

  if (n_ > 1 && q_ <= options.log_table_max) {
    log_table_.assign(q_, 0);
    exp_table_.assign(2 * order, 0);
    std::uint32_t cur = 1;
    for (std::uint64_t i = 0; i < order; ++i) {
      exp_table_[i] = cur;
      exp_table_[i + order] = cur;
      log_table_[cur] = static_cast<std::uint32_t>(i);
      cur = mul_schoolbook(cur, generator_.code);
    }
  }

  if (n_ > 1 && q_ <= options.add_table_max) {
    std::vector<std::uint32_t> table(std::size_t{q_} * q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
      for (std::uint32_t b = 0; b < q_; ++b) table[std::size_t{a} * q_ + b] = add_digits(a, b);
    }
    add_table_ = std::move(table);
  }

  if (q_ <= options.eta_table_max) {
    std::vector<std::int8_t> table(q_, -1);
    table[0] = 0;
    const Element g2 = mul(generator_, generator_);
    Element cur = one();
    for (std::uint64_t k = 0; k < order / 2; ++k) {
      table[cur.code] = 1;
      cur = mul(cur, g2);
    }
    eta_table_ = std::move(table);
  }
}

Element Field::element(std::uint64_t code) const {
  if (code >= q_) throw Error(Errc::invalid_argument, "element code " + std::to_string(code) + " out of range");
  return {static_cast<std::uint32_t>(code)};
}

Element Field::from_int(std::int64_t value) const noexcept {
  std::int64_t r = value % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return {static_cast<std::uint32_t>(r)};
}

std::uint32_t Field::add_digits(std::uint32_t a, std::uint32_t b) const noexcept {
  std::uint32_t result = 0;
  std::uint32_t place = 1;
  for (std::uint32_t i = 0; i < n_; ++i) {
    std::uint32_t d = a % p_ + b % p_;
    if (d >= p_) d -= p_;
    result += d * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return result;
}

std::uint32_t Field::neg_digits(std::uint32_t a) const noexcept {
  std::uint32_t result = 0;
  std::uint32_t place = 1;
  for (std::uint32_t i = 0; i < n_; ++i) {
    const std::uint32_t d = a % p_;
    if (d != 0) result += (p_ - d) * place;
    a /= p_;
    place *= p_;
  }
  return result;
}

std::uint32_t Field::mul_schoolbook(std::uint32_t a, std::uint32_t b) const noexcept {
  std::array<std::uint64_t, 32> da{};
  std::array<std::uint64_t, 32> db{};
  std::array<std::uint64_t, 64> prod{};
  for (std::uint32_t i = 0; i < n_; ++i) {
    da[i] = a % p_;
    db[i] = b % p_;
    a /= p_;
    b /= p_;
  }
  for (std::uint32_t i = 0; i < n_; ++i) {
    if (da[i] == 0) continue;
    for (std::uint32_t j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  }
  // Reduce with the monic modulus: x^n = -sum_{i<n} m_i x^i.
  for (std::uint32_t k = 2 * n_ - 2; k >= n_; --k) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (std::uint32_t i = 0; i < n_; ++i) {
      const std::uint64_t t = c * modulus_[i] % p_;
      prod[k - n_ + i] = (prod[k - n_ + i] + p_ - t) % p_;
    }
  }
  std::uint32_t result = 0;
  for (std::uint32_t i = n_; i-- > 0;) result = result * p_ + static_cast<std::uint32_t>(prod[i]);
  return result;
}

Element Field::pow(Element base, std::uint64_t exponent) const noexcept {
  if (base.code == 0) return exponent == 0 ? one() : zero();
  exponent %= (q_ - 1);
  Element result = one();
  while (exponent > 0) {
    if (exponent & 1) result = mul(result, base);
    exponent >>= 1;
    if (exponent > 0) base = mul(base, base);
  }
  return result;
}

Element Field::inv(Element a) const {
  if (a.code == 0) throw Error(Errc::domain, "inverse of zero");
  if (!exp_table_.empty()) {
    const std::uint32_t order = q_ - 1;
    return {exp_table_[(order - log_table_[a.code]) % order]};
  }
  return pow(a, std::uint64_t{q_} - 2);
}

int Field::eta_by_power(Element x) const noexcept {
  if (x.code == 0) return 0;
  return pow(x, (std::uint64_t{q_} - 1) / 2) == one() ? 1 : -1;
}

std::optional<Element> Field::sqrt(Element x) const {
  if (!is_3_mod_4()) throw Error(Errc::unsupported_field, "canonical square roots need q = 3 (mod 4)");
  if (x.code == 0) return zero();
  if (eta(x) != 1) return std::nullopt;
  return pow(x, (std::uint64_t{q_} + 1) / 4);
}

std::optional<Element> Field::square_root_in_squares(Element x) const {
  if (x.code == 0) return std::nullopt;
  auto r = sqrt(x);
  if (!r) return std::nullopt;
  return eta(*r) == 1 ? *r : neg(*r);
}

std::optional<int> CijPartition::classify(Element x) const {
  const int c = classes.at(x.code);
  if (c < 0) return std::nullopt;
  return c;
}

CijPartition cij_partition(const Field& field) {
  if (!field.is_3_mod_4()) throw Error(Errc::unsupported_field, "C_ij partition needs q = 3 (mod 4)");
  CijPartition part;
  part.classes.assign(field.q(), -1);
  const Element minus_one = field.neg(field.one());
  for (std::uint32_t c = 1; c < field.q(); ++c) {
    const Element x{c};
    if (x == minus_one) continue;
    const int i = field.eta(x) == 1 ? 0 : 1;
    const int j = field.eta(field.add(x, field.one())) == 1 ? 0 : 1;
    part.classes[c] = static_cast<std::int8_t>(2 * i + j);
    ++part.counts[static_cast<std::size_t>(2 * i + j)];
  }
  return part;
}

}  // namespace nhdiff
