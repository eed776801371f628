#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nhdiff/nhdiff.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

constexpr std::uint64_t kFullDdtLimit = std::uint64_t{1} << 15;
constexpr std::uint64_t kFullBctLimit = 400;
constexpr std::uint64_t kReducedBctLimit = 20000;

struct CliFailure {
  int code;
  std::string message;
};

[[noreturn]] void fail_usage(const std::string& msg) { throw CliFailure{kExitUsage, msg}; }

void check(nhd_status st) {
  if (st == NHD_OK) return;
  const std::string msg = std::string(nhd_status_name(st)) + ": " + nhd_last_error();
  const bool internal = st == NHD_ERR_CONSISTENCY || st == NHD_ERR_INTERNAL;
  throw CliFailure{internal ? kExitFailed : kExitUsage, msg};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  nhd_string_free(s);
  return out;
}

struct FieldGuard {
  nhd_field* ptr = nullptr;
  ~FieldGuard() { nhd_field_destroy(ptr); }
};

struct ReportGuard {
  nhd_report* ptr = nullptr;
  ~ReportGuard() { nhd_report_destroy(ptr); }
};

struct FieldArgs {
  std::uint64_t p = 0;
  std::uint64_t n = 1;
  std::uint64_t q = 0;
  std::string modulus;
};

void add_field_options(CLI::App* cmd, FieldArgs& a) {
  cmd->add_option("--p", a.p, "Characteristic (odd prime)");
  cmd->add_option("--n", a.n, "Extension degree")->capture_default_str();
  cmd->add_option("--q", a.q, "Field order; alternative to --p/--n");
  cmd->add_option("--modulus", a.modulus, "Defining polynomial, comma separated, low degree first");
}

void open_field(const FieldArgs& a, FieldGuard& g) {
  if (a.q != 0 && a.p != 0) fail_usage("give either --q or --p/--n, not both");
  if (a.q == 0 && a.p == 0) fail_usage("a field is required: --q Q or --p P [--n N]");
  if (!a.modulus.empty()) {
    if (a.p == 0) fail_usage("--modulus needs --p");
    std::vector<std::uint32_t> coeffs;
    std::stringstream ss(a.modulus);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        coeffs.push_back(static_cast<std::uint32_t>(std::stoul(item)));
      } catch (const std::exception&) {
        fail_usage("cannot parse modulus coefficient '" + item + "'");
      }
    }
    check(nhd_field_create_with_modulus(static_cast<std::uint32_t>(a.p), coeffs.data(), coeffs.size(), &g.ptr));
    return;
  }
  if (a.q != 0) {
    check(nhd_field_create_q(a.q, &g.ptr));
  } else {
    if (a.p > UINT32_MAX || a.n > UINT32_MAX) fail_usage("field parameters out of range");
    check(nhd_field_create(static_cast<std::uint32_t>(a.p), static_cast<std::uint32_t>(a.n), &g.ptr));
  }
}

struct FamilyArgs {
  std::string family = "nh";
  unsigned r = 2;
  std::string u = "1";
  bool reduced = false;
};

void add_family_options(CLI::App* cmd, FamilyArgs& a) {
  cmd->add_option("--family", a.family, "Function family")->check(CLI::IsMember({"nh"}))->capture_default_str();
  cmd->add_option("--r", a.r, "Exponent r of x^r (1 + u eta(x))")->capture_default_str();
  cmd->add_option("--u", a.u, "Parameter u: element code, +k/-k, or a rational like 1/3")->capture_default_str();
  cmd->add_flag("--reduced", a.reduced, "Expand the a = 1 row instead of enumerating every a (q = 3 mod 4)");
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail_usage("cannot open output file '" + path + "'");
  out << text;
}

unsigned default_jobs() {
  if (const char* env = std::getenv("SPECTRA_JOBS")) {
    try {
      const unsigned long v = std::stoul(env);
      if (v >= 1 && v <= 4096) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "ignoring SPECTRA_JOBS='" << env << "'\n";
  }
  return 1;
}

int report_exit(const nhd_report* r) {
  nhd_report_counts c{};
  check(nhd_report_counts_get(r, &c));
  return c.exception == 0 && c.errors == 0 ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differential and boomerang analysis of x^r (1 + u eta(x)) over odd finite fields", "nhdiff"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(nhd_version()));

  FieldArgs field_args;
  auto* field_cmd = app.add_subcommand("field", "Print the field representation as JSON");
  std::string field_action = "info";
  field_cmd->add_option("action", field_action, "What to print")->check(CLI::IsMember({"info"}));
  add_field_options(field_cmd, field_args);

  FieldArgs spec_field;
  FamilyArgs spec_family;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Differential spectrum as JSON");
  add_field_options(spectrum_cmd, spec_field);
  add_family_options(spectrum_cmd, spec_family);

  FieldArgs boom_field;
  FamilyArgs boom_family;
  auto* boomerang_cmd = app.add_subcommand("boomerang", "Boomerang spectrum as JSON");
  add_field_options(boomerang_cmd, boom_field);
  add_family_options(boomerang_cmd, boom_family);

  std::uint32_t charsum_qmax = 199;
  std::uint64_t charsum_seed = 1;
  auto* charsum_cmd = app.add_subcommand("charsum", "Character-sum identities against enumeration");
  auto* selftest_cmd = charsum_cmd->add_subcommand("selftest", "Run the oracle suite");
  charsum_cmd->require_subcommand(1);
  selftest_cmd->add_option("--qmax", charsum_qmax, "Largest field order")->capture_default_str();
  selftest_cmd->add_option("--seed", charsum_seed, "Sampling seed")->capture_default_str();

  std::string which;
  auto* constants_cmd = app.add_subcommand("constants", "Constants of the Weil-type lower bounds");
  constants_cmd->add_option("--which", which, "Bound")->required()->check(CLI::IsMember({"thm2", "thm6", "boom"}));

  std::uint64_t sweep_min = 3;
  std::uint64_t sweep_max = 100;
  std::string sweep_claims = "all";
  unsigned sweep_jobs = default_jobs();
  std::string sweep_u_mode = "auto";
  std::string sweep_out;
  std::string sweep_format = "csv";
  bool sweep_timing = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "Check claims over a range of field orders");
  sweep_cmd->add_option("--min", sweep_min, "Smallest q (inclusive)")->capture_default_str();
  sweep_cmd->add_option("--max", sweep_max, "Largest q (exclusive)")->capture_default_str();
  sweep_cmd->add_option("--claims", sweep_claims, "Comma-separated claim ids, or all")->capture_default_str();
  sweep_cmd->add_option("--jobs", sweep_jobs, "Worker threads (default: SPECTRA_JOBS or 1)")
      ->check(CLI::Range(1u, 4096u));
  sweep_cmd->add_option("--u-mode", sweep_u_mode, "auto | all | sample:K:SEED | fixed:LIST")->capture_default_str();
  sweep_cmd->add_option("--out", sweep_out, "Output file (default stdout)");
  sweep_cmd->add_option("--format", sweep_format, "Report format")
      ->check(CLI::IsMember({"csv", "json", "text"}))
      ->capture_default_str();
  sweep_cmd->add_flag("--timing", sweep_timing, "Record per-row wall-clock time");

  std::uint64_t verify_q = 0;
  std::string verify_claims = "all";
  std::string verify_u_mode = "auto";
  std::string verify_format = "text";
  auto* verify_cmd = app.add_subcommand("verify", "Check claims at a single field order");
  verify_cmd->add_option("--q", verify_q, "Field order")->required();
  verify_cmd->add_option("--claims", verify_claims, "Comma-separated claim ids, or all")->capture_default_str();
  verify_cmd->add_option("--u-mode", verify_u_mode, "auto | all | sample:K:SEED | fixed:LIST")->capture_default_str();
  verify_cmd->add_option("--format", verify_format, "Report format")
      ->check(CLI::IsMember({"csv", "json", "text"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*field_cmd) {
      FieldGuard g;
      open_field(field_args, g);
      char* out = nullptr;
      check(nhd_field_info_json(g.ptr, &out));
      std::cout << take(out) << '\n';
      return kExitOk;
    }

    if (*spectrum_cmd || *boomerang_cmd) {
      const bool boomerang = static_cast<bool>(*boomerang_cmd);
      const FieldArgs& fa = boomerang ? boom_field : spec_field;
      const FamilyArgs& fam = boomerang ? boom_family : spec_family;
      FieldGuard g;
      open_field(fa, g);
      const std::uint64_t q = nhd_field_q(g.ptr);
      if (boomerang) {
        if (!fam.reduced && q > kFullBctLimit) {
          fail_usage("q = " + std::to_string(q) + " is too large for the full boomerang table (limit " +
                     std::to_string(kFullBctLimit) + "); use --reduced");
        }
        if (fam.reduced && q > kReducedBctLimit) {
          fail_usage("q = " + std::to_string(q) + " exceeds the reduced boomerang limit " +
                     std::to_string(kReducedBctLimit));
        }
      } else if (!fam.reduced && q > kFullDdtLimit) {
        fail_usage("q = " + std::to_string(q) + " is too large for the full difference table (limit " +
                   std::to_string(kFullDdtLimit) + "); use --reduced");
      }
      std::uint32_t u = 0;
      check(nhd_resolve_u(g.ptr, fam.u.c_str(), &u));
      char* out = nullptr;
      if (boomerang) {
        check(nhd_nh_boomerang_json(g.ptr, fam.r, u, fam.reduced ? 1 : 0, &out));
      } else {
        check(nhd_nh_spectrum_json(g.ptr, fam.r, u, fam.reduced ? 1 : 0, &out));
      }
      std::cout << take(out) << '\n';
      return kExitOk;
    }

    if (*charsum_cmd) {
      char* out = nullptr;
      int passed = 0;
      check(nhd_charsum_selftest(charsum_qmax, charsum_seed, &out, &passed));
      std::cout << take(out);
      if (!passed) std::cerr << "character-sum self-test: failures detected\n";
      return passed ? kExitOk : kExitFailed;
    }

    if (*constants_cmd) {
      nhd_constants c{};
      check(nhd_lower_bound_constants(which.c_str(), &c));
      std::cout << "m1=" << c.m1 << " m2=" << c.m2;
      if (c.exceptional_term != 0) {
        std::cout << " exceptional=" << c.exceptional_term << " m2_total=" << (c.m2 + c.exceptional_term);
      }
      std::cout << '\n';
      return kExitOk;
    }

    if (*sweep_cmd) {
      if (sweep_max < sweep_min) fail_usage("--max must not be below --min");
      ReportGuard r;
      check(nhd_sweep(sweep_claims.c_str(), sweep_min, sweep_max, sweep_jobs, sweep_u_mode.c_str(),
                      sweep_timing ? 1 : 0, &r.ptr));
      char* out = nullptr;
      check(nhd_report_format(r.ptr, sweep_format.c_str(), &out));
      write_output(take(out), sweep_out);
      return report_exit(r.ptr);
    }

    if (*verify_cmd) {
      ReportGuard r;
      check(nhd_verify(verify_claims.c_str(), verify_q, verify_u_mode.c_str(), &r.ptr));
      char* out = nullptr;
      check(nhd_report_format(r.ptr, verify_format.c_str(), &out));
      std::cout << take(out);
      return report_exit(r.ptr);
    }
  } catch (const CliFailure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  }
  return kExitUsage;
}
