#include "nhdiff/poly.hpp"

#include <algorithm>

namespace nhdiff {

namespace {

void strip(std::vector<Element>& c) {
  while (!c.empty() && c.back().code == 0) c.pop_back();
}

}  // namespace

Poly::Poly(std::vector<Element> coeffs) : coeffs_(std::move(coeffs)) { strip(coeffs_); }

Poly Poly::from_ints(const Field& field, std::initializer_list<std::int64_t> low_first) {
  std::vector<Element> c;
  c.reserve(low_first.size());
  for (auto v : low_first) c.push_back(field.from_int(v));
  return Poly(std::move(c));
}

Poly Poly::constant(Element c) { return Poly(std::vector<Element>{c}); }

Poly Poly::monomial(Element c, unsigned k) {
  std::vector<Element> v(k + 1);
  v[k] = c;
  return Poly(std::move(v));
}

Element eval(const Field& field, const Poly& f, Element x) noexcept {
  Element acc{};
  const auto& c = f.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = field.add(field.mul(acc, x), c[i]);
  return acc;
}

Poly add(const Field& field, const Poly& f, const Poly& g) {
  std::vector<Element> out(std::max(f.coeffs().size(), g.coeffs().size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = field.add(f.coeff(i), g.coeff(i));
  return Poly(std::move(out));
}

Poly sub(const Field& field, const Poly& f, const Poly& g) {
  std::vector<Element> out(std::max(f.coeffs().size(), g.coeffs().size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = field.sub(f.coeff(i), g.coeff(i));
  return Poly(std::move(out));
}

Poly mul(const Field& field, const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) return {};
  std::vector<Element> out(f.coeffs().size() + g.coeffs().size() - 1);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    for (std::size_t j = 0; j < g.coeffs().size(); ++j) {
      out[i + j] = field.add(out[i + j], field.mul(f.coeffs()[i], g.coeffs()[j]));
    }
  }
  return Poly(std::move(out));
}

Poly scale(const Field& field, const Poly& f, Element c) {
  std::vector<Element> out(f.coeffs());
  for (auto& e : out) e = field.mul(e, c);
  return Poly(std::move(out));
}

Poly derivative(const Field& field, const Poly& f) {
  if (f.degree() < 1) return {};
  std::vector<Element> out(f.coeffs().size() - 1);
  for (std::size_t i = 1; i < f.coeffs().size(); ++i) {
    out[i - 1] = field.mul(field.from_int(static_cast<std::int64_t>(i)), f.coeffs()[i]);
  }
  return Poly(std::move(out));
}

std::pair<Poly, Poly> divmod(const Field& field, const Poly& f, const Poly& g) {
  if (g.is_zero()) throw Error(Errc::domain, "polynomial division by zero");
  std::vector<Element> rem(f.coeffs());
  const int dg = g.degree();
  if (f.degree() < dg) return {Poly{}, f};
  std::vector<Element> quot(static_cast<std::size_t>(f.degree() - dg + 1));
  const Element lead_inv = field.inv(g.leading());
  for (int k = f.degree(); k >= dg; --k) {
    const Element c = field.mul(rem[static_cast<std::size_t>(k)], lead_inv);
    if (c.code == 0) continue;
    quot[static_cast<std::size_t>(k - dg)] = c;
    for (int i = 0; i <= dg; ++i) {
      auto& slot = rem[static_cast<std::size_t>(k - dg + i)];
      slot = field.sub(slot, field.mul(c, g.coeffs()[static_cast<std::size_t>(i)]));
    }
  }
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly gcd(const Field& field, Poly f, Poly g) {
  while (!g.is_zero()) {
    Poly r = divmod(field, f, g).second;
    f = std::move(g);
    g = std::move(r);
  }
  if (f.is_zero()) return f;
  return scale(field, f, field.inv(f.leading()));
}

bool is_squarefree(const Field& field, const Poly& f) {
  if (f.degree() < 1) return false;
  return gcd(field, f, derivative(field, f)).degree() == 0;
}

BivariatePoly::BivariatePoly(Terms terms) : terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto& kv) { return kv.second.code == 0; });
}

void BivariatePoly::add_term(const Field& field, unsigned i, unsigned j, Element c) {
  const Element sum = field.add(terms_[{i, j}], c);
  if (sum.code == 0) {
    terms_.erase({i, j});
  } else {
    terms_[{i, j}] = sum;
  }
}

int BivariatePoly::degree() const noexcept {
  int d = -1;
  for (const auto& [ij, c] : terms_) d = std::max(d, static_cast<int>(ij.first + ij.second));
  return d;
}

Element BivariatePoly::eval(const Field& field, Element t, Element y) const noexcept {
  Element acc{};
  for (const auto& [ij, c] : terms_) {
    acc = field.add(acc, field.mul(c, field.mul(field.pow(t, ij.first), field.pow(y, ij.second))));
  }
  return acc;
}

}  // namespace nhdiff
