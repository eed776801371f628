#ifndef NHDIFF_NHDIFF_H
#define NHDIFF_NHDIFF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(NHD_BUILDING_LIBRARY)
#define NHD_API __declspec(dllexport)
#else
#define NHD_API __declspec(dllimport)
#endif
#else
#define NHD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nhd_status {
  NHD_OK = 0,
  NHD_ERR_NOT_PRIME = 1,
  NHD_ERR_EVEN_PRIME = 2,
  NHD_ERR_ZERO_DEGREE = 3,
  NHD_ERR_OVERFLOW = 4,
  NHD_ERR_DOMAIN = 5,
  NHD_ERR_UNSUPPORTED_FIELD = 6,
  NHD_ERR_UNSUPPORTED_PARAMETER = 7,
  NHD_ERR_DEGENERATE_INPUT = 8,
  NHD_ERR_PRECONDITION = 9,
  NHD_ERR_CONSISTENCY = 10,
  NHD_ERR_INVALID_ARGUMENT = 11,
  NHD_ERR_INTERNAL = 12
} nhd_status;

typedef struct nhd_field nhd_field;
typedef struct nhd_report nhd_report;

typedef struct nhd_constants {
  int64_t m1;
  int64_t m2;
  double m2_real;
  int64_t exceptional_term;
} nhd_constants;

typedef struct nhd_report_counts {
  uint64_t pass;
  uint64_t exception;
  uint64_t skipped;
  uint64_t errors;
} nhd_report_counts;

/* Library version string, e.g. "0.1.0". */
NHD_API const char* nhd_version(void);
NHD_API const char* nhd_status_name(nhd_status status);
/* Message of the last failed call on this thread; empty when none. */
NHD_API const char* nhd_last_error(void);
/* Releases strings returned through char** out-parameters. */
NHD_API void nhd_string_free(char* s);

/* Field handles. */
NHD_API nhd_status nhd_field_create(uint32_t p, uint32_t n, nhd_field** out);
/* q must be an odd prime power. */
NHD_API nhd_status nhd_field_create_q(uint64_t q, nhd_field** out);
/* modulus: monic, low degree first, length n + 1. */
NHD_API nhd_status nhd_field_create_with_modulus(uint32_t p, const uint32_t* modulus, size_t length,
                                                 nhd_field** out);
NHD_API void nhd_field_destroy(nhd_field* field);
NHD_API uint32_t nhd_field_p(const nhd_field* field);
NHD_API uint32_t nhd_field_n(const nhd_field* field);
NHD_API uint32_t nhd_field_q(const nhd_field* field);
/* {"p","n","q","modulus","generator","q_mod_4","eta_table","cij_counts"};
   cij_counts is null unless q = 3 (mod 4). */
NHD_API nhd_status nhd_field_info_json(const nhd_field* field, char** out);
NHD_API nhd_status nhd_field_eta(const nhd_field* field, uint32_t code, int* out);
/* Element code of an integer, code or rational token such as "1/3". */
NHD_API nhd_status nhd_resolve_u(const nhd_field* field, const char* token, uint32_t* out_code);

/* The family x^r (1 + u eta(x)). */
NHD_API nhd_status nhd_nh_eval(const nhd_field* field, unsigned r, uint32_t u_code, uint32_t x_code,
                               uint32_t* out);
/* max over b of delta(1, b); equals the differential uniformity when q = 3 (mod 4). */
NHD_API nhd_status nhd_nh_uniformity(const nhd_field* field, unsigned r, uint32_t u_code, uint32_t* out);
NHD_API nhd_status nhd_nh_spectrum_json(const nhd_field* field, unsigned r, uint32_t u_code, int reduced,
                                        char** out);
NHD_API nhd_status nhd_nh_boomerang_json(const nhd_field* field, unsigned r, uint32_t u_code, int reduced,
                                         char** out);

/* Character-sum oracle suite; text table on *out, *all_passed set to 0 or 1. */
NHD_API nhd_status nhd_charsum_selftest(uint32_t qmax, uint64_t seed, char** out, int* all_passed);
/* which: "thm2", "thm6" or "boom". */
NHD_API nhd_status nhd_lower_bound_constants(const char* which, nhd_constants* out);

/* Sweeps. claims: comma list ("THM5,SPEC_F21" or "all"); u_mode: NULL or
   "auto", "all", "sample:K:SEED", "fixed:LIST". */
NHD_API nhd_status nhd_sweep(const char* claims, uint64_t min, uint64_t max, unsigned jobs, const char* u_mode,
                             int timing, nhd_report** out);
/* Single q; a q outside a claim's hypotheses yields a skipped row. */
NHD_API nhd_status nhd_verify(const char* claims, uint64_t q, const char* u_mode, nhd_report** out);
NHD_API void nhd_report_destroy(nhd_report* report);
NHD_API nhd_status nhd_report_counts_get(const nhd_report* report, nhd_report_counts* out);
/* format: "csv", "json" or "text". */
NHD_API nhd_status nhd_report_format(const nhd_report* report, const char* format, char** out);

#ifdef __cplusplus
}
#endif

#endif
