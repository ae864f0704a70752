#include <math.h>
#include <stdio.h>
#include <string.h>

#include "nafd/nafd.h"

static int failures = 0;

#define EXPECT(cond)                                                  \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: %s failed\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

static void errors(void) {
  nafd_scenario* s = NULL;
  double x = 0.0;
  EXPECT(nafd_scenario_default(1, NULL) == NAFD_ERR_NULL);
  EXPECT(strlen(nafd_last_error()) > 0);
  EXPECT(nafd_scenario_load(NULL, 0, &s) == NAFD_ERR_NULL);
  EXPECT(nafd_scenario_load(NAFD_CONFIG_DIR "/nope.yaml", 0, &s) == NAFD_ERR_IO);
  EXPECT(s == NULL);
  EXPECT(nafd_scenario_from_yaml("system: {bogus: 1}", 0, &s) == NAFD_ERR_CONFIG);
  EXPECT(nafd_scenario_from_yaml("system: {m: 0}", 0, &s) == NAFD_ERR_CONFIG);
  EXPECT(nafd_rho(0, &x) == NAFD_ERR_INVALID_ARGUMENT);
  EXPECT(nafd_rho(3, NULL) == NAFD_ERR_NULL);
  EXPECT(nafd_rho(3, &x) == NAFD_OK);
  EXPECT(strcmp(nafd_last_error(), "") == 0);
  EXPECT(nafd_table_rows(NULL) == 0);
  EXPECT(nafd_table_csv(NULL) == NULL);
  nafd_scenario_free(NULL);
  nafd_table_free(NULL);
}

static void closed_form(void) {
  nafd_scenario* s = NULL;
  double r_ul[2], r_dl[3], se = 0.0, ee = 0.0, rho = 0.0;
  int bits[9];
  uint64_t seed = 0;
  int i;

  EXPECT(nafd_rho(1, &rho) == NAFD_OK);
  EXPECT(fabs(rho - 0.3634) < 1e-12);

  EXPECT(nafd_scenario_load(NAFD_CONFIG_DIR "/default.yaml", 0, &s) == NAFD_OK);
  EXPECT(nafd_scenario_seed(s, &seed) == NAFD_OK);
  EXPECT(seed == 20);
  for (i = 0; i < 9; ++i) bits[i] = 6;
  EXPECT(nafd_closed_form(s, NAFD_SCHEME_MR, NAFD_CSI_ESTIMATED, NAFD_IC_ON, bits, 9, r_ul, r_dl,
                          &se, &ee) == NAFD_OK);
  EXPECT(r_ul[0] > 0.0 && r_dl[0] > 0.0);
  EXPECT(se > 0.0 && ee > 0.0);
  EXPECT(nafd_closed_form(s, NAFD_SCHEME_MR, NAFD_CSI_ESTIMATED, NAFD_IC_ON, bits, 8, r_ul, r_dl,
                          &se, &ee) == NAFD_ERR_INVALID_ARGUMENT);
  EXPECT(nafd_closed_form(s, NAFD_SCHEME_BOTH, NAFD_CSI_ESTIMATED, NAFD_IC_ON, bits, 9, NULL, NULL,
                          NULL, NULL) == NAFD_ERR_INVALID_ARGUMENT);
  bits[0] = 13;
  EXPECT(nafd_closed_form(s, NAFD_SCHEME_MR, NAFD_CSI_ESTIMATED, NAFD_IC_ON, bits, 9, NULL, NULL,
                          NULL, NULL) == NAFD_ERR_INVALID_ARGUMENT);
  nafd_scenario_free(s);
}

static void tables(void) {
  nafd_scenario* s = NULL;
  nafd_table *t = NULL, *front = NULL, *trace = NULL, *summary = NULL;
  nafd_sweep_options so;
  nafd_tradeoff_options to;
  nafd_optimize_options oo;
  nafd_validate_options vo;
  int pass = -1;

  EXPECT(nafd_scenario_default(20, &s) == NAFD_OK);
  EXPECT(nafd_scenario_geometry(s, &t) == NAFD_OK);
  EXPECT(nafd_table_cols(t) == 4);
  EXPECT(strncmp(nafd_table_csv(t), "kind,index,x_m,y_m\n", 19) == 0);
  EXPECT(nafd_table_json(t)[0] == '[');
  nafd_table_free(t);

  nafd_sweep_options_init(&so);
  so.scheme = NAFD_SCHEME_ZF;
  so.bits_min = 3;
  so.bits_max = 4;
  EXPECT(nafd_sweep_bits(s, &so, &t) == NAFD_OK);
  EXPECT(nafd_table_rows(t) == 2 * 2 * 2);
  nafd_table_free(t);
  so.bits_min = 5;
  EXPECT(nafd_sweep_bits(s, &so, &t) == NAFD_ERR_INVALID_ARGUMENT);

  nafd_tradeoff_options_init(&to);
  to.m_max = 8;
  EXPECT(nafd_tradeoff(s, &to, &t) == NAFD_OK);
  EXPECT(nafd_table_rows(t) == 6 * 2);
  nafd_table_free(t);

  nafd_validate_options_init(&vo);
  vo.scheme = NAFD_SCHEME_MR;
  vo.csi = NAFD_CSI_ESTIMATED;
  vo.ic = NAFD_IC_ON;
  vo.bits_min = vo.bits_max = 6;
  vo.trials = 40;
  vo.tol = 1.0;
  EXPECT(nafd_validate(s, &vo, &t, &pass) == NAFD_OK);
  EXPECT(pass == 1);
  nafd_table_free(t);

  nafd_optimize_options_init(&oo);
  oo.method = NAFD_METHOD_DQN;
  oo.iterations = 0;
  EXPECT(nafd_optimize(s, &oo, &front, &trace, &summary) == NAFD_OK);
  EXPECT(nafd_table_rows(front) == 1);
  EXPECT(nafd_table_rows(trace) == 0);
  EXPECT(nafd_table_rows(summary) > 0);
  nafd_table_free(front);
  nafd_table_free(trace);
  nafd_table_free(summary);

  oo.method = NAFD_METHOD_NSGA2;
  oo.generations = 20;
  oo.pop_size = 20;
  EXPECT(nafd_optimize(s, &oo, &front, NULL, NULL) == NAFD_OK);
  EXPECT(nafd_table_rows(front) >= 1);
  nafd_table_free(front);
  oo.method = (nafd_method)9;
  EXPECT(nafd_optimize(s, &oo, NULL, NULL, NULL) == NAFD_ERR_INVALID_ARGUMENT);
  nafd_scenario_free(s);
}

int main(void) {
  EXPECT(strlen(nafd_version()) > 0);
  errors();
  closed_form();
  tables();
  if (failures) fprintf(stderr, "%d check(s) failed\n", failures);
  return failures ? 1 : 0;
}
