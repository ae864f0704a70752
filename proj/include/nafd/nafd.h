#ifndef NAFD_NAFD_H
#define NAFD_NAFD_H

#include <stddef.h>
#include <stdint.h>

#if defined(NAFD_BUILDING_LIBRARY)
#define NAFD_API __attribute__((visibility("default")))
#else
#define NAFD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nafd_status {
  NAFD_OK = 0,
  NAFD_ERR_NULL = 1,
  NAFD_ERR_INVALID_ARGUMENT = 2,
  NAFD_ERR_IO = 3,
  NAFD_ERR_CONFIG = 4,
  NAFD_ERR_RUNTIME = 5
} nafd_status;

typedef enum nafd_scheme { NAFD_SCHEME_MR = 1, NAFD_SCHEME_ZF = 2, NAFD_SCHEME_BOTH = 3 } nafd_scheme;
typedef enum nafd_csi { NAFD_CSI_ESTIMATED = 1, NAFD_CSI_STATISTICAL = 2, NAFD_CSI_BOTH = 3 } nafd_csi;
typedef enum nafd_ic { NAFD_IC_ON = 1, NAFD_IC_OFF = 2, NAFD_IC_BOTH = 3 } nafd_ic;
typedef enum nafd_method { NAFD_METHOD_NSGA2 = 1, NAFD_METHOD_DQN = 2 } nafd_method;

/* Opaque handles. */
typedef struct nafd_scenario nafd_scenario;
typedef struct nafd_table nafd_table;

/* Message of the last failed call on this thread ("" if none). */
NAFD_API const char* nafd_last_error(void);
NAFD_API const char* nafd_version(void);

/* Scenario: configuration, sampled geometry and large-scale statistics.
   A seed of 0 keeps the seed from the configuration. */
NAFD_API nafd_status nafd_scenario_default(uint64_t seed, nafd_scenario** out);
NAFD_API nafd_status nafd_scenario_load(const char* path, uint64_t seed, nafd_scenario** out);
NAFD_API nafd_status nafd_scenario_from_yaml(const char* yaml, uint64_t seed, nafd_scenario** out);
NAFD_API void nafd_scenario_free(nafd_scenario* s);
NAFD_API nafd_status nafd_scenario_seed(const nafd_scenario* s, uint64_t* seed);
/* kind,index,x_m,y_m */
NAFD_API nafd_status nafd_scenario_geometry(const nafd_scenario* s, nafd_table** out);

/* Distortion factor of a b-bit converter under the default formula. */
NAFD_API nafd_status nafd_rho(int bits, double* out);

/* Closed-form rates for one allocation. bits lists UL RAU, DL RAU and DL user
   widths in that order (N_UL + N_DL + K_DL entries). r_ul / r_dl receive K_UL /
   K_DL values and may be NULL. */
NAFD_API nafd_status nafd_closed_form(const nafd_scenario* s, nafd_scheme scheme, nafd_csi csi,
                                      nafd_ic ic, const int* bits, size_t n_bits, double* r_ul,
                                      double* r_dl, double* sum_se, double* ee);

typedef struct nafd_validate_options {
  nafd_scheme scheme;
  nafd_csi csi;
  nafd_ic ic;
  int bits_min;
  int bits_max;
  int trials; /* 0: from configuration */
  double tol;
} nafd_validate_options;

typedef struct nafd_sweep_options {
  nafd_scheme scheme;
  nafd_csi csi;
  nafd_ic ic;
  int bits_min;
  int bits_max;
} nafd_sweep_options;

typedef struct nafd_tradeoff_options {
  nafd_scheme scheme;
  int bits_min;
  int bits_max;
  int m_min;
  int m_max;
  int m_step;
} nafd_tradeoff_options;

typedef struct nafd_optimize_options {
  nafd_scheme scheme;
  nafd_method method;
  int generations; /* <0: from configuration */
  int pop_size;    /* <0: from configuration */
  int iterations;  /* <0: from configuration */
} nafd_optimize_options;

NAFD_API void nafd_validate_options_init(nafd_validate_options* o);
NAFD_API void nafd_sweep_options_init(nafd_sweep_options* o);
NAFD_API void nafd_tradeoff_options_init(nafd_tradeoff_options* o);
NAFD_API void nafd_optimize_options_init(nafd_optimize_options* o);

/* all_pass is set to 1 when every user-averaged point is within tolerance. */
NAFD_API nafd_status nafd_validate(const nafd_scenario* s, const nafd_validate_options* o,
                                   nafd_table** out, int* all_pass);
NAFD_API nafd_status nafd_sweep_bits(const nafd_scenario* s, const nafd_sweep_options* o,
                                     nafd_table** out);
NAFD_API nafd_status nafd_tradeoff(const nafd_scenario* s, const nafd_tradeoff_options* o,
                                   nafd_table** out);
/* trace is empty for NSGA-II. Any output pointer may be NULL. */
NAFD_API nafd_status nafd_optimize(const nafd_scenario* s, const nafd_optimize_options* o,
                                   nafd_table** front, nafd_table** trace, nafd_table** summary);

/* Tables: strings stay valid until the table is freed. */
NAFD_API size_t nafd_table_rows(const nafd_table* t);
NAFD_API size_t nafd_table_cols(const nafd_table* t);
NAFD_API const char* nafd_table_csv(nafd_table* t);
NAFD_API const char* nafd_table_json(nafd_table* t);
NAFD_API void nafd_table_free(nafd_table* t);

#ifdef __cplusplus
}
#endif

#endif
