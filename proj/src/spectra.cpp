#include "nhdiff/spectra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace nhdiff {

using ordered_json = nlohmann::ordered_json;

FunctionTable::FunctionTable(const Field& field, std::vector<Element> values)
    : field_(&field), values_(std::move(values)) {
  if (values_.size() != field.q()) throw Error(Errc::invalid_argument, "function table length must equal q");
  for (auto v : values_) {
    if (v.code >= field.q()) throw Error(Errc::invalid_argument, "function table entry out of range");
  }
}

FunctionTable FunctionTable::nh(const Field& field, const NHParams& params) {
  return from_function(field, [&](Element x) { return eval_F(field, params, x); });
}

namespace {

void require_direction(Element a) {
  if (a.code == 0) throw Error(Errc::degenerate_input, "direction a must be nonzero");
}

void fill_derivative(const FunctionTable& t, Element a, std::vector<std::uint32_t>& out) {
  const Field& f = t.field();
  out.resize(f.q());
  for (std::uint32_t x = 0; x < f.q(); ++x) {
    out[x] = f.sub(t(f.add(Element{x}, a)), t(Element{x})).code;
  }
}

SpectrumCounts sparse_from_dense(const std::vector<std::uint64_t>& dense, std::uint64_t scale) {
  SpectrumCounts out;
  out[0] = dense.empty() ? 0 : dense[0] * scale;
  for (std::size_t i = 1; i < dense.size(); ++i) {
    if (dense[i] != 0) out[i] = dense[i] * scale;
  }
  return out;
}

std::uint64_t max_populated(const SpectrumCounts& counts) {
  std::uint64_t m = 0;
  for (const auto& [i, c] : counts) {
    if (c != 0) m = std::max(m, i);
  }
  return m;
}

void require_nh_table(const FunctionTable& table, const NHParams& params) {
  const Field& f = table.field();
  if (!f.is_3_mod_4()) throw Error(Errc::unsupported_field, "row reduction needs q = 3 (mod 4)");
  for (std::uint32_t x = 0; x < f.q(); ++x) {
    if (table(Element{x}) != eval_F(f, params, Element{x})) {
      throw Error(Errc::consistency, "function table does not match F_{r,u} at x = " + std::to_string(x));
    }
  }
}

// Sign attached to a^r when moving a nonzero direction a back to a = 1.
Element reduction_image(const Field& f, Element b_row1, Element a, unsigned r, bool boomerang) {
  Element scale = f.pow(a, r);
  if (f.eta(a) == -1) {
    const unsigned exponent = boomerang ? r : r + 1;
    if (exponent % 2 == 1) scale = f.neg(scale);
  }
  return f.mul(b_row1, scale);
}

}  // namespace

std::uint64_t ddt_entry(const FunctionTable& table, Element a, Element b) {
  require_direction(a);
  const Field& f = table.field();
  std::uint64_t count = 0;
  for (std::uint32_t x = 0; x < f.q(); ++x) {
    if (f.sub(table(f.add(Element{x}, a)), table(Element{x})) == b) ++count;
  }
  return count;
}

std::vector<std::uint32_t> ddt_row(const FunctionTable& table, Element a) {
  require_direction(a);
  std::vector<std::uint32_t> values;
  fill_derivative(table, a, values);
  std::vector<std::uint32_t> counts(table.field().q(), 0);
  for (auto v : values) ++counts[v];
  return counts;
}

bool locally_apn_excluded(const Field& field, Element b) noexcept {
  if (field.n() == 1) return b.code == 0;
  return field.in_prime_subfield(b);
}

DifferentialSpectrum differential_spectrum(const FunctionTable& table, const std::optional<NHParams>& reduction) {
  const Field& f = table.field();
  const std::uint32_t q = f.q();
  DifferentialSpectrum out;
  out.q = q;
  std::vector<std::uint64_t> dense(std::size_t{q} + 1, 0);

  if (!reduction) {
    std::vector<std::uint32_t> values;
    std::vector<std::uint32_t> counts(q, 0);
    std::uint32_t outside_max = 0;
    for (std::uint32_t a = 1; a < q; ++a) {
      fill_derivative(table, Element{a}, values);
      for (auto v : values) ++counts[v];
      for (std::uint32_t b = 0; b < q; ++b) {
        ++dense[counts[b]];
        if (!locally_apn_excluded(f, Element{b})) outside_max = std::max(outside_max, counts[b]);
        counts[b] = 0;
      }
    }
    out.omega = sparse_from_dense(dense, 1);
    out.uniformity = max_populated(out.omega);
    out.locally_apn = outside_max == 2;
    return out;
  }

  require_nh_table(table, *reduction);
  const DerivativeKernel kernel(f, reduction->r);
  std::vector<std::uint32_t> row;
  kernel.delta_row(reduction->u, row);
  for (auto c : row) ++dense[c];
  out.omega = sparse_from_dense(dense, q - 1);
  out.uniformity = max_populated(out.omega);

  bool has_two = false;
  bool violation = false;
  for (std::uint32_t b = 0; b < q && !violation; ++b) {
    const std::uint32_t c = row[b];
    if (c < 2 || (c == 2 && has_two) || (c > 2 && b == 0)) continue;
    bool escapes = false;
    for (std::uint32_t a = 1; a < q && !escapes; ++a) {
      escapes = !locally_apn_excluded(f, reduction_image(f, Element{b}, Element{a}, reduction->r, false));
    }
    if (c == 2 && escapes) has_two = true;
    if (c > 2 && escapes) violation = true;
  }
  out.locally_apn = has_two && !violation;
  return out;
}

bool locally_apn_check(const FunctionTable& table) { return differential_spectrum(table).locally_apn; }

std::uint64_t bct_entry(const FunctionTable& table, Element a, Element b) {
  require_direction(a);
  const Field& f = table.field();
  const std::uint64_t q = f.q();
  std::vector<std::uint32_t> d;
  fill_derivative(table, a, d);
  std::unordered_map<std::uint64_t, std::uint32_t> buckets;
  buckets.reserve(q);
  for (std::uint32_t y = 0; y < q; ++y) ++buckets[table(Element{y}).code * q + d[y]];
  std::uint64_t count = 0;
  for (std::uint32_t x = 0; x < q; ++x) {
    const auto it = buckets.find(f.sub(table(Element{x}), b).code * q + d[x]);
    if (it != buckets.end()) count += it->second;
  }
  return count;
}

std::uint64_t bct_entry_pairs(const FunctionTable& table, Element a, Element b) {
  require_direction(a);
  const Field& f = table.field();
  std::uint64_t count = 0;
  for (std::uint32_t x = 0; x < f.q(); ++x) {
    const Element fx = table(Element{x});
    const Element fxa = table(f.add(Element{x}, a));
    for (std::uint32_t y = 0; y < f.q(); ++y) {
      if (f.sub(fx, table(Element{y})) == b && f.sub(fxa, table(f.add(Element{y}, a))) == b) ++count;
    }
  }
  return count;
}

std::vector<std::uint64_t> bct_row(const FunctionTable& table, Element a) {
  require_direction(a);
  const Field& f = table.field();
  const std::uint32_t q = f.q();
  std::vector<std::uint32_t> d;
  fill_derivative(table, a, d);

  // Counting sort of x by D_a f(x).
  std::vector<std::uint32_t> start(std::size_t{q} + 1, 0);
  for (auto v : d) ++start[v + 1];
  std::partial_sum(start.begin(), start.end(), start.begin());
  std::vector<std::uint32_t> order(q);
  std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
  for (std::uint32_t x = 0; x < q; ++x) order[fill[d[x]]++] = x;

  std::vector<std::uint64_t> row(q, 0);
  for (std::uint32_t c = 0; c < q; ++c) {
    for (std::uint32_t i = start[c]; i < start[c + 1]; ++i) {
      const Element fx = table(Element{order[i]});
      for (std::uint32_t j = start[c]; j < start[c + 1]; ++j) {
        ++row[f.sub(fx, table(Element{order[j]})).code];
      }
    }
  }
  return row;
}

BoomerangSpectrum boomerang_spectrum(const FunctionTable& table, const std::optional<NHParams>& reduction) {
  const Field& f = table.field();
  const std::uint32_t q = f.q();
  BoomerangSpectrum out;
  out.q = q;
  std::vector<std::uint64_t> dense;
  auto tally = [&](const std::vector<std::uint64_t>& row) {
    for (std::uint32_t b = 1; b < q; ++b) {
      if (row[b] >= dense.size()) dense.resize(row[b] + 1, 0);
      ++dense[row[b]];
    }
  };
  std::uint64_t scale = 1;
  if (reduction) {
    require_nh_table(table, *reduction);
    tally(bct_row(table, f.one()));
    scale = q - 1;
  } else {
    for (std::uint32_t a = 1; a < q; ++a) tally(bct_row(table, Element{a}));
  }
  out.nu = sparse_from_dense(dense, scale);
  out.uniformity = max_populated(out.nu);
  return out;
}

std::int64_t cubic_character_sum(const Field& field) {
  std::int64_t sum = 0;
  const Element one = field.one();
  for (std::uint32_t c = 0; c < field.q(); ++c) {
    const Element y{c};
    sum += field.eta(field.mul(field.add(y, one), field.add(field.mul(y, y), one)));
  }
  return sum;
}

namespace {

// (q - 1) * num / den, throwing when the quotient is not an integer.
std::uint64_t exact_scaled(std::uint64_t q_minus_1, std::int64_t num, std::int64_t den) {
  const std::int64_t g = std::gcd(static_cast<std::int64_t>(q_minus_1), den);
  const std::int64_t rest = den / g;
  if (num % rest != 0 || num < 0) {
    throw Error(Errc::consistency, "closed-form spectrum count is not a nonnegative integer");
  }
  return (q_minus_1 / static_cast<std::uint64_t>(g)) * static_cast<std::uint64_t>(num / rest);
}

}  // namespace

DifferentialSpectrum closed_form_spectrum_F21(const Field& field) {
  if (!field.is_3_mod_4()) throw Error(Errc::unsupported_field, "closed form needs q = 3 (mod 4)");
  if (field.q() <= 7) throw Error(Errc::unsupported_parameter, "closed form needs q > 7");
  const std::int64_t q = field.q();
  const std::int64_t T = cubic_character_sum(field);
  const std::int64_t e2 = field.eta(field.from_int(2));
  DifferentialSpectrum out;
  out.q = field.q();
  const std::uint64_t qm1 = static_cast<std::uint64_t>(q - 1);
  out.omega[0] = exact_scaled(qm1, 3 * q - 5 + (e2 - 1) * T, 8);
  const std::uint64_t w1 = exact_scaled(qm1, 2 * q - 2 + (1 - e2) * T, 4);
  const std::uint64_t w2 = exact_scaled(qm1, q + 1 + (e2 - 1) * T, 8);
  if (w1 != 0) out.omega[1] = w1;
  if (w2 != 0) out.omega[2] = w2;
  out.omega[static_cast<std::uint64_t>((q + 1) / 4)] = qm1;
  out.uniformity = static_cast<std::uint64_t>((q + 1) / 4);
  out.locally_apn = true;
  return out;
}

bool spectrum_identities_hold(const DifferentialSpectrum& s) {
  const std::uint64_t target = std::uint64_t{s.q} * (s.q - 1);
  std::uint64_t total = 0;
  std::uint64_t weighted = 0;
  for (const auto& [i, c] : s.omega) {
    total += c;
    weighted += i * c;
  }
  return s.omega.count(0) == 1 && total == target && weighted == target && max_populated(s.omega) == s.uniformity;
}

bool spectrum_identities_hold(const BoomerangSpectrum& s) {
  const std::uint64_t target = std::uint64_t{s.q - 1} * (s.q - 1);
  std::uint64_t total = 0;
  for (const auto& [i, c] : s.nu) total += c;
  return total == target && max_populated(s.nu) == s.uniformity;
}

std::uint64_t PairClassCounts::total() const noexcept {
  std::uint64_t t = 0;
  for (const auto& row : counts) {
    for (auto c : row) t += c;
  }
  return t;
}

PairClassCounts boomerang_case_counts_F21(const Field& field, Element b) {
  if (!field.is_3_mod_4()) throw Error(Errc::unsupported_field, "boomerang case analysis needs q = 3 (mod 4)");
  if (b.code == 0) throw Error(Errc::domain, "boomerang case analysis covers b != 0 only");
  const Field& f = field;
  const Element one = f.one();
  const Element two = f.from_int(2);
  const Element half_b = f.div(b, two);
  const Element minus_half_b = f.neg(half_b);
  PairClassCounts out;

  // (C_00, C_01) and (C_01, C_00): a square root w of +-b/2 with
  // eta(w - 1) = eta(1 - 2w) = 1, then a root of 1 - 2w whose successor is a non-square.
  auto shifted_pair = [&](Element h) -> std::uint64_t {
    const auto w = f.square_root_in_squares(h);
    if (!w || f.eta(f.sub(*w, one)) != 1) return 0;
    const Element rest = f.sub(one, f.mul(two, *w));
    const auto y = f.square_root_in_squares(rest);
    if (!y) return 0;
    return f.eta(f.add(*y, one)) == -1 ? 1 : 0;
  };
  // (C_00, C_10) and (C_10, C_00): a square root x of +-b/2 with
  // eta(x + 1) = eta(1 + 2x) = 1, then a root w of 1 + 2x with eta(w - 1) = -1.
  auto lifted_pair = [&](Element h) -> std::uint64_t {
    const auto x = f.square_root_in_squares(h);
    if (!x || f.eta(f.add(*x, one)) != 1) return 0;
    const Element rest = f.add(one, f.mul(two, *x));
    const auto w = f.square_root_in_squares(rest);
    if (!w) return 0;
    return f.eta(f.sub(*w, one)) == -1 ? 1 : 0;
  };

  out.counts[0][1] = shifted_pair(half_b);
  out.counts[0][2] = lifted_pair(half_b);
  out.counts[1][0] = shifted_pair(minus_half_b);
  out.counts[2][0] = lifted_pair(minus_half_b);
  return out;
}

std::string spectrum_string(const SpectrumCounts& counts) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : counts) {
    if (!first) os << ';';
    os << i << ':' << c;
    first = false;
  }
  return os.str();
}

namespace {

ordered_json counts_json(const SpectrumCounts& counts) {
  ordered_json obj = ordered_json::object();
  for (const auto& [i, c] : counts) obj[std::to_string(i)] = c;
  return obj;
}

SpectrumCounts counts_from_json(const ordered_json& obj) {
  SpectrumCounts out;
  for (const auto& [k, v] : obj.items()) out[std::stoull(k)] = v.get<std::uint64_t>();
  return out;
}

ordered_json parse_object(const std::string& text) {
  try {
    auto j = ordered_json::parse(text);
    if (!j.is_object()) throw Error(Errc::invalid_argument, "spectrum JSON must be an object");
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_argument, std::string("malformed spectrum JSON: ") + e.what());
  }
}

}  // namespace

std::string to_json(const DifferentialSpectrum& s, const SpectrumLabel& label, int indent) {
  ordered_json j;
  j["q"] = s.q;
  j["r"] = label.r;
  j["u"] = label.u_code;
  j["delta"] = s.uniformity;
  j["spectrum"] = counts_json(s.omega);
  j["locally_apn"] = s.locally_apn;
  return j.dump(indent);
}

std::string to_json(const BoomerangSpectrum& s, const SpectrumLabel& label, int indent) {
  ordered_json j;
  j["q"] = s.q;
  j["r"] = label.r;
  j["u"] = label.u_code;
  j["beta"] = s.uniformity;
  j["spectrum"] = counts_json(s.nu);
  return j.dump(indent);
}

DifferentialSpectrum differential_spectrum_from_json(const std::string& text) {
  const auto j = parse_object(text);
  try {
    DifferentialSpectrum s;
    s.q = j.at("q").get<std::uint32_t>();
    s.uniformity = j.at("delta").get<std::uint64_t>();
    s.omega = counts_from_json(j.at("spectrum"));
    s.locally_apn = j.at("locally_apn").get<bool>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_argument, std::string("incomplete spectrum JSON: ") + e.what());
  }
}

BoomerangSpectrum boomerang_spectrum_from_json(const std::string& text) {
  const auto j = parse_object(text);
  try {
    BoomerangSpectrum s;
    s.q = j.at("q").get<std::uint32_t>();
    s.uniformity = j.at("beta").get<std::uint64_t>();
    s.nu = counts_from_json(j.at("spectrum"));
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_argument, std::string("incomplete spectrum JSON: ") + e.what());
  }
}

}  // namespace nhdiff
