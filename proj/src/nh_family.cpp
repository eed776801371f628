#include "nhdiff/nh_family.hpp"

#include <algorithm>

namespace nhdiff {

std::vector<Element> excluded_parameters(const Field& field) {
  std::vector<Element> out{field.zero(), field.one(), field.neg(field.one())};
  if (field.p() != 3) {
    const Element third = field.inv(field.from_int(3));
    out.push_back(third);
    out.push_back(field.neg(third));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_excluded_parameter(const Field& field, Element u) {
  const auto ex = excluded_parameters(field);
  return std::find(ex.begin(), ex.end(), u) != ex.end();
}

Element eval_F(const Field& field, const NHParams& params, Element x) noexcept {
  if (x.code == 0) return field.zero();
  const Element xr = field.pow(x, params.r);
  const Element factor = field.eta(x) == 1 ? field.add(field.one(), params.u) : field.sub(field.one(), params.u);
  return field.mul(xr, factor);
}

Element derivative_value(const Field& field, const NHParams& params, Element a, Element x) {
  if (a.code == 0) throw Error(Errc::degenerate_input, "derivative direction a must be nonzero");
  return field.sub(eval_F(field, params, field.add(x, a)), eval_F(field, params, x));
}

CaseAnalysis::CaseAnalysis(const Field& field, Element u) : field_(&field), u_(u) {
  if (!field.is_3_mod_4()) throw Error(Errc::unsupported_field, "case analysis needs q = 3 (mod 4)");
  const Element one = field.one();
  if (u.code == 0 || u == one || u == field.neg(one)) {
    throw Error(Errc::unsupported_parameter, "case analysis needs u outside {0, 1, -1}");
  }
  const Element u_inv = field.inv(u);
  const Element two = field.from_int(2);
  tau1_ = field.mul(field.add(one, u), u_inv);
  tau2_ = field.mul(field.sub(one, u), u_inv);
  two_u_inv_ = field.mul(two, u_inv);
  boundary0_ = field.add(u, one);
  boundary1_ = field.sub(u, one);
  inv_2_1pu_ = field.inv(field.mul(two, field.add(one, u)));
  inv_2_1mu_ = field.inv(field.mul(two, field.sub(one, u)));
  eta2_ = field.eta(two);
}

Element CaseAnalysis::delta01(Element b) const noexcept {
  const Field& f = *field_;
  return f.sub(f.mul(tau1_, tau2_), f.mul(two_u_inv_, b));
}

Element CaseAnalysis::delta10(Element b) const noexcept {
  const Field& f = *field_;
  return f.add(f.mul(tau1_, tau2_), f.mul(two_u_inv_, b));
}

AijCounts CaseAnalysis::counts(Element b) const {
  const Field& f = *field_;
  const Element one = f.one();
  AijCounts out;

  const Element x00 = f.mul(f.sub(b, boundary0_), inv_2_1pu_);
  if (f.eta(x00) == 1 && f.eta(f.add(x00, one)) == 1) out.c[0] = 1;

  const Element x11 = f.mul(f.sub(b, f.sub(one, u_)), inv_2_1mu_);
  if (f.eta(x11) == -1 && f.eta(f.add(x11, one)) == -1) out.c[3] = 1;

  const Element d01 = delta01(b);
  if (f.eta(d01) != -1) {
    const Element s = *f.sqrt(d01);
    const Element roots[2] = {s, f.neg(s)};
    const int distinct = s.code == 0 ? 1 : 2;
    for (int k = 0; k < distinct; ++k) {
      if (f.eta(f.add(tau2_, roots[k])) == eta2_ && f.eta(f.add(tau1_, roots[k])) == -eta2_) ++out.c[1];
    }
  }

  const Element d10 = delta10(b);
  if (f.eta(d10) != -1) {
    const Element s = *f.sqrt(d10);
    const Element roots[2] = {s, f.neg(s)};
    const int distinct = s.code == 0 ? 1 : 2;
    for (int k = 0; k < distinct; ++k) {
      if (f.eta(f.sub(roots[k], tau1_)) == -eta2_ && f.eta(f.sub(roots[k], tau2_)) == eta2_) ++out.c[2];
    }
  }
  return out;
}

int CaseAnalysis::delta(Element b) const {
  return counts(b).sum() + (b == boundary0_ ? 1 : 0) + (b == boundary1_ ? 1 : 0);
}

AijCounts aij_counts_closed(const Field& field, Element u, Element b) { return CaseAnalysis(field, u).counts(b); }

std::vector<LemmaVerdict> structural_lemma_checks(const Field& field, Element u, Element b) {
  const CaseAnalysis ca(field, u);
  const AijCounts c = ca.counts(b);
  const int delta = ca.delta(b);
  const Element one = field.one();
  const int eu = field.eta(u);
  const int e_plus = field.eta(field.add(one, u));
  const int e_minus = field.eta(field.sub(one, u));

  std::vector<LemmaVerdict> out;
  out.push_back({"a10_pair_excludes_a00", e_plus == eu, !(c.c10() == 2 && c.c00() != 0)});
  out.push_back({"a01_pair_excludes_a00", e_plus == -eu, !(c.c01() == 2 && c.c00() != 0)});
  out.push_back({"a01_pair_excludes_a11", e_minus == eu, !(c.c01() == 2 && c.c11() != 0)});
  out.push_back({"a10_pair_excludes_a11", e_minus == -eu, !(c.c10() == 2 && c.c11() != 0)});
  const bool boundary = b == ca.boundary_at_zero() || b == ca.boundary_at_minus_one();
  out.push_back({"boundary_delta_at_most_4", boundary, delta <= 4});
  out.push_back({"equal_signs_delta_at_most_4", e_plus == e_minus, delta <= 4});
  out.push_back({"delta_at_most_5", true, delta <= 5});
  for (auto& v : out) {
    if (!v.applicable) v.holds = true;
  }
  return out;
}

DerivativeKernel::DerivativeKernel(const Field& field, unsigned r) : field_(&field), r_(r) {
  const std::uint32_t q = field.q();
  std::vector<Element> powers(q);
  for (std::uint32_t x = 0; x < q; ++x) powers[x] = field.pow(Element{x}, r);
  base_.resize(q);
  twist_.resize(q);
  for (std::uint32_t x = 0; x < q; ++x) {
    const Element x1 = field.add(Element{x}, field.one());
    const Element px = powers[x];
    const Element px1 = powers[x1.code];
    base_[x] = field.sub(px1, px).code;
    const Element t1 = field.eta(x1) == 1 ? px1 : (field.eta(x1) == -1 ? field.neg(px1) : field.zero());
    const Element t0 = field.eta(Element{x}) == 1 ? px : (field.eta(Element{x}) == -1 ? field.neg(px) : field.zero());
    twist_[x] = field.sub(t1, t0).code;
  }
}

void DerivativeKernel::derivative_row(Element u, std::vector<std::uint32_t>& out) const {
  const Field& f = *field_;
  const std::uint32_t q = f.q();
  out.resize(q);
  if (f.n() == 1) {
    thread_local std::vector<std::uint32_t> multiples;
    multiples.resize(q);
    std::uint32_t acc = 0;
    for (std::uint32_t v = 0; v < q; ++v) {
      multiples[v] = acc;
      acc += u.code;
      if (acc >= q) acc -= q;
    }
    for (std::uint32_t x = 0; x < q; ++x) {
      std::uint32_t s = base_[x] + multiples[twist_[x]];
      if (s >= q) s -= q;
      out[x] = s;
    }
    return;
  }
  for (std::uint32_t x = 0; x < q; ++x) {
    out[x] = f.add(Element{base_[x]}, f.mul(u, Element{twist_[x]})).code;
  }
}

void DerivativeKernel::delta_row(Element u, std::vector<std::uint32_t>& counts) const {
  std::vector<std::uint32_t> values;
  derivative_row(u, values);
  counts.assign(field_->q(), 0);
  for (auto v : values) ++counts[v];
}

std::uint32_t DerivativeKernel::uniformity(Element u, std::vector<std::uint32_t>& scratch_values,
                                           std::vector<std::uint32_t>& scratch_counts) const {
  derivative_row(u, scratch_values);
  if (scratch_counts.size() != field_->q()) scratch_counts.assign(field_->q(), 0);
  std::uint32_t best = 0;
  for (auto v : scratch_values) best = std::max(best, ++scratch_counts[v]);
  for (auto v : scratch_values) scratch_counts[v] = 0;
  return best;
}

}  // namespace nhdiff
