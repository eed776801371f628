#include "nhdiff/characters.hpp"

#include <cmath>
#include <random>

namespace nhdiff {

std::int64_t weil_sum_quadratic_closed(const Field& field, Element a2, Element a1, Element a0) {
  if (a2.code == 0) throw Error(Errc::degenerate_input, "leading coefficient a2 must be nonzero");
  const Element d = field.sub(field.mul(a1, a1), field.mul(field.from_int(4), field.mul(a0, a2)));
  const int e = field.eta(a2);
  if (d.code != 0) return -e;
  return static_cast<std::int64_t>(field.q() - 1) * e;
}

std::int64_t weil_sum_brute(const Field& field, const Poly& f) {
  std::int64_t sum = 0;
  for (std::uint32_t x = 0; x < field.q(); ++x) sum += field.eta(eval(field, f, Element{x}));
  return sum;
}

std::int64_t conic_count_closed(const Field& field, Element a1, Element a2, Element b) {
  if (a1.code == 0 || a2.code == 0) throw Error(Errc::degenerate_input, "conic coefficients must be nonzero");
  const std::int64_t q = field.q();
  const std::int64_t nu = b.code == 0 ? q - 1 : -1;
  return q + nu * field.eta(field.neg(field.mul(a1, a2)));
}

std::int64_t jacobsthal_sum(const Field& field, unsigned n_exp, Element a) {
  if (field.n() != 1) throw Error(Errc::unsupported_field, "Jacobsthal sums are defined over prime fields only");
  if (n_exp == 0) throw Error(Errc::invalid_argument, "Jacobsthal index must be positive");
  if (a.code == 0) throw Error(Errc::degenerate_input, "Jacobsthal parameter a must be nonzero");
  std::int64_t sum = 0;
  for (std::uint32_t c = 0; c < field.q(); ++c) {
    const Element x{c};
    sum += field.eta(field.add(field.pow(x, n_exp + 1), field.mul(a, x)));
  }
  return sum;
}

ReciprocalCheck cubic_reciprocal_check(const Field& field, Element a, Element b, Element c, Element d) {
  if (a.code == 0 || d.code == 0) throw Error(Errc::degenerate_input, "outer cubic coefficients must be nonzero");
  const Poly forward({d, c, b, a});
  const Poly reversed({a, b, c, d});
  ReciprocalCheck out;
  for (std::uint32_t code = 0; code < field.q(); ++code) {
    const Element x{code};
    out.lhs += field.eta(eval(field, forward, x)) * field.eta(x);
  }
  out.rhs = -field.eta(a) + weil_sum_brute(field, reversed);
  return out;
}

WeilBoundCheck weil_bound_check(const Field& field, const Poly& f) {
  if (f.degree() < 1) throw Error(Errc::precondition, "polynomial must have positive degree");
  if (!f.is_monic()) throw Error(Errc::precondition, "polynomial must be monic");
  if (!is_squarefree(field, f)) throw Error(Errc::precondition, "polynomial must be squarefree");
  WeilBoundCheck out;
  out.sum = weil_sum_brute(field, f);
  out.bound = (f.degree() - 1) * std::sqrt(static_cast<double>(field.q()));
  out.ok = static_cast<double>(std::llabs(out.sum)) <= out.bound + 1e-9;
  return out;
}

std::uint64_t curve_point_count(const Field& field, const BivariatePoly& curve) {
  if (curve.is_zero()) throw Error(Errc::degenerate_input, "zero polynomial defines no curve");
  unsigned max_j = 0;
  for (const auto& [ij, c] : curve.terms()) max_j = std::max(max_j, ij.second);
  std::vector<Element> by_y(max_j + 1);
  std::uint64_t count = 0;
  for (std::uint32_t tc = 0; tc < field.q(); ++tc) {
    const Element t{tc};
    std::fill(by_y.begin(), by_y.end(), Element{});
    for (const auto& [ij, c] : curve.terms()) {
      by_y[ij.second] = field.add(by_y[ij.second], field.mul(c, field.pow(t, ij.first)));
    }
    const Poly slice(by_y);
    if (slice.is_zero()) {
      count += field.q();
      continue;
    }
    for (std::uint32_t yc = 0; yc < field.q(); ++yc) {
      if (eval(field, slice, Element{yc}).code == 0) ++count;
    }
  }
  return count;
}

QuarticCriteria quartic_criteria(const Field& field, Element A, Element B) {
  const Element disc = field.sub(field.mul(A, A), field.mul(field.from_int(4), B));
  QuarticCriteria out;
  out.irreducible_predicted = field.eta(disc) == -1 && field.eta(B) == -1;
  out.square_discriminant_zero = disc.code == 0;
  return out;
}

bool quartic_has_factor(const Field& field, const Poly& monic_quartic) {
  if (monic_quartic.degree() != 4 || !monic_quartic.is_monic()) {
    throw Error(Errc::invalid_argument, "expected a monic quartic");
  }
  for (std::uint32_t x = 0; x < field.q(); ++x) {
    if (eval(field, monic_quartic, Element{x}).code == 0) return true;
  }
  for (std::uint32_t c = 0; c < field.q(); ++c) {
    for (std::uint32_t d = 0; d < field.q(); ++d) {
      const Poly quad({Element{d}, Element{c}, field.one()});
      if (divmod(field, monic_quartic, quad).second.is_zero()) return true;
    }
  }
  return false;
}

namespace {

struct SelftestContext {
  const Field& field;
  std::mt19937_64 rng;

  Element any() { return Element{static_cast<std::uint32_t>(rng() % field.q())}; }
  Element nonzero() { return Element{static_cast<std::uint32_t>(1 + rng() % (field.q() - 1))}; }
};

SelftestRow check_quadratic(SelftestContext& ctx) {
  const Field& f = ctx.field;
  SelftestRow row{"quadratic_weil_sum", f.q(), 0, 0};
  std::vector<Element> partial(f.q());
  auto run_pair = [&](Element a2, Element a1, auto&& a0_source, std::uint32_t a0_count) {
    for (std::uint32_t x = 0; x < f.q(); ++x) {
      const Element e{x};
      partial[x] = f.mul(e, f.add(f.mul(a2, e), a1));
    }
    for (std::uint32_t k = 0; k < a0_count; ++k) {
      const Element a0 = a0_source(k);
      std::int64_t brute = 0;
      for (std::uint32_t x = 0; x < f.q(); ++x) brute += f.eta(f.add(partial[x], a0));
      ++row.cases;
      if (brute != weil_sum_quadratic_closed(f, a2, a1, a0)) ++row.failures;
    }
  };
  if (f.q() <= 81) {
    for (std::uint32_t a2 = 1; a2 < f.q(); ++a2) {
      for (std::uint32_t a1 = 0; a1 < f.q(); ++a1) {
        run_pair(Element{a2}, Element{a1}, [](std::uint32_t k) { return Element{k}; }, f.q());
      }
    }
  } else {
    for (int s = 0; s < 64; ++s) {
      const Element a2 = ctx.nonzero();
      const Element a1 = ctx.any();
      run_pair(a2, a1, [&](std::uint32_t) { return ctx.any(); }, 16);
    }
  }
  return row;
}

SelftestRow check_conic(SelftestContext& ctx) {
  const Field& f = ctx.field;
  SelftestRow row{"conic_count", f.q(), 0, 0};
  std::vector<Element> squares(f.q());
  for (std::uint32_t x = 0; x < f.q(); ++x) squares[x] = f.mul(Element{x}, Element{x});
  std::vector<std::int64_t> hist(f.q());
  auto run_pair = [&](Element a1, Element a2) {
    std::fill(hist.begin(), hist.end(), 0);
    for (std::uint32_t x1 = 0; x1 < f.q(); ++x1) {
      const Element lhs = f.mul(a1, squares[x1]);
      for (std::uint32_t x2 = 0; x2 < f.q(); ++x2) ++hist[f.add(lhs, f.mul(a2, squares[x2])).code];
    }
    for (std::uint32_t b = 0; b < f.q(); ++b) {
      ++row.cases;
      if (hist[b] != conic_count_closed(f, a1, a2, Element{b})) ++row.failures;
    }
  };
  if (f.q() <= 31) {
    for (std::uint32_t a1 = 1; a1 < f.q(); ++a1) {
      for (std::uint32_t a2 = 1; a2 < f.q(); ++a2) run_pair(Element{a1}, Element{a2});
    }
  } else {
    for (int s = 0; s < 24; ++s) run_pair(ctx.nonzero(), ctx.nonzero());
  }
  return row;
}

SelftestRow check_jacobsthal(SelftestContext& ctx) {
  const Field& f = ctx.field;
  SelftestRow row{"jacobsthal_even_vanishing", f.q(), 0, 0};
  for (unsigned n_exp : {2u, 4u}) {
    for (std::uint32_t a = 1; a < f.q(); ++a) {
      ++row.cases;
      if (jacobsthal_sum(f, n_exp, Element{a}) != 0) ++row.failures;
    }
  }
  return row;
}

SelftestRow check_reciprocal(SelftestContext& ctx) {
  const Field& f = ctx.field;
  SelftestRow row{"cubic_reciprocal", f.q(), 0, 0};
  for (int s = 0; s < 1000; ++s) {
    const Element a = ctx.nonzero();
    const Element b = ctx.any();
    const Element c = ctx.any();
    const Element d = ctx.nonzero();
    const auto r = cubic_reciprocal_check(f, a, b, c, d);
    ++row.cases;
    if (r.lhs != r.rhs) ++row.failures;
  }
  return row;
}

SelftestRow check_quartic_minus_one(SelftestContext& ctx) {
  const Field& f = ctx.field;
  SelftestRow row{"sum_eta_x4_minus_1", f.q(), 1, 0};
  const Poly g({f.neg(f.one()), Element{}, Element{}, Element{}, f.one()});
  if (weil_sum_brute(f, g) != -1) ++row.failures;
  return row;
}

SelftestRow check_quartic_criteria(SelftestContext& ctx) {
  const Field& f = ctx.field;
  SelftestRow row{"quartic_irreducibility", f.q(), 0, 0};
  auto run = [&](Element A, Element B) {
    ++row.cases;
    const auto crit = quartic_criteria(f, A, B);
    const Poly quartic({B, Element{}, A, Element{}, f.one()});
    if (crit.irreducible_predicted && quartic_has_factor(f, quartic)) ++row.failures;
    // A polynomial square forces a vanishing discriminant.
    const Element half_a = f.div(A, f.from_int(2));
    if (f.mul(half_a, half_a) == B && !crit.square_discriminant_zero) ++row.failures;
  };
  if (f.q() <= 31) {
    for (std::uint32_t A = 0; A < f.q(); ++A) {
      for (std::uint32_t B = 0; B < f.q(); ++B) run(Element{A}, Element{B});
    }
  } else {
    for (int s = 0; s < 48; ++s) run(ctx.any(), ctx.any());
  }
  return row;
}

SelftestRow check_weil_bound(SelftestContext& ctx) {
  const Field& f = ctx.field;
  SelftestRow row{"weil_bound", f.q(), 0, 0};
  auto run = [&](std::vector<Element> c) {
    const Poly g(std::move(c));
    if (!is_squarefree(f, g)) return;
    ++row.cases;
    if (!weil_bound_check(f, g).ok) ++row.failures;
  };
  const std::uint32_t q = f.q();
  if (q <= 49) {
    for (std::uint32_t c2 = 0; c2 < q; ++c2)
      for (std::uint32_t c1 = 0; c1 < q; ++c1)
        for (std::uint32_t c0 = 0; c0 < q; ++c0) run({Element{c0}, Element{c1}, Element{c2}, f.one()});
    for (std::uint32_t c3 = 0; c3 < q; ++c3)
      for (std::uint32_t c2 = 0; c2 < q; ++c2)
        for (std::uint32_t c1 = 0; c1 < q; ++c1)
          for (std::uint32_t c0 = 0; c0 < q; ++c0)
            run({Element{c0}, Element{c1}, Element{c2}, Element{c3}, f.one()});
  } else {
    for (int s = 0; s < 200; ++s) run({ctx.any(), ctx.any(), ctx.any(), f.one()});
    for (int s = 0; s < 200; ++s) run({ctx.any(), ctx.any(), ctx.any(), ctx.any(), f.one()});
  }
  return row;
}

}  // namespace

std::vector<SelftestRow> charsum_selftest(std::uint32_t qmax, std::uint64_t seed) {
  std::vector<SelftestRow> rows;
  for (std::uint32_t q = 3; q <= qmax; q += 2) {
    std::uint32_t n = 0;
    const auto p = prime_power_base(q, &n);
    if (!p) continue;
    const Field field = Field::build(*p, n);
    SelftestContext ctx{field, std::mt19937_64(seed ^ q)};
    rows.push_back(check_quadratic(ctx));
    rows.push_back(check_conic(ctx));
    rows.push_back(check_reciprocal(ctx));
    rows.push_back(check_quartic_criteria(ctx));
    rows.push_back(check_weil_bound(ctx));
    if (field.is_3_mod_4()) {
      rows.push_back(check_quartic_minus_one(ctx));
      if (field.n() == 1) rows.push_back(check_jacobsthal(ctx));
    }
  }
  return rows;
}

}  // namespace nhdiff
