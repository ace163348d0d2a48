/* Exercises the shared library through its C header only. */

#include <math.h>
#include <stdio.h>
#include <string.h>

#include "rahecke/rahecke.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static void graphs(void) {
  rh_graph* g = NULL;
  int hyp = -1;
  const char* w = NULL;
  EXPECT(rh_graph_builtin("square", &g) == RH_OK);
  EXPECT(rh_graph_rank(g) == 4);
  EXPECT(strcmp(rh_graph_generator(g, 0), "u") == 0);
  EXPECT(rh_graph_generator(g, 9) == NULL);
  EXPECT(strlen(rh_graph_hash(g)) > 0);
  EXPECT(rh_graph_is_hyperbolic(g, &hyp) == RH_OK && hyp == 0);
  EXPECT(rh_graph_normalize(g, "sus", &w) == RH_OK && strcmp(w, "u") == 0);
  EXPECT(rh_graph_normalize(g, "sx", &w) == RH_ERR_VALIDATION);
  EXPECT(strlen(rh_last_error()) > 0);
  rh_graph_free(g);

  g = NULL;
  EXPECT(rh_graph_builtin("nope", &g) == RH_ERR_VALIDATION && g == NULL);
  EXPECT(rh_graph_from_json("{\"generators\": [\"a\", \"b\"], \"commuting_pairs\": []}", &g) == RH_OK);
  EXPECT(rh_graph_is_hyperbolic(g, &hyp) == RH_OK && hyp == 1);
  rh_graph_free(g);
  EXPECT(rh_graph_from_json("{\"generators\": [", &g) == RH_ERR_VALIDATION);
  EXPECT(rh_graph_load("/nonexistent.json", &g) == RH_ERR_VALIDATION);
  EXPECT(rh_graph_builtin(NULL, &g) == RH_ERR_VALIDATION);
}

static void elements(void) {
  rh_graph* g = NULL;
  rh_param* q = NULL;
  rh_element *s = NULL, *ss = NULL, *st = NULL;
  double re = 0, im = 0, norm = 0;
  rh_graph_builtin("dihedral", &g);
  EXPECT(rh_param_parse(g, "all=4", &q) == RH_OK);
  EXPECT(rh_element_parse(q, "s", &s) == RH_OK);
  EXPECT(rh_element_mul(s, s, &ss) == RH_OK);
  /* T_s^2 = 1 + 1.5 T_s at q = 4 */
  EXPECT(rh_element_coeff(ss, "e", &re, &im) == RH_OK && re == 1.0 && im == 0.0);
  EXPECT(rh_element_coeff(ss, "s", &re, &im) == RH_OK && fabs(re - 1.5) < 1e-15);
  EXPECT(rh_element_support(ss) == 2);
  EXPECT(rh_element_trace(ss, &re, &im) == RH_OK && re == 1.0);
  EXPECT(rh_element_parse(q, "2i*st", &st) == RH_OK);
  EXPECT(rh_element_l2_norm(st, &norm) == RH_OK && fabs(norm - 2.0) < 1e-15);
  {
    rh_element* a = NULL;
    EXPECT(rh_element_star(st, &a) == RH_OK);
    EXPECT(rh_element_coeff(a, "ts", &re, &im) == RH_OK && im == -2.0);
    rh_element_free(a);
    EXPECT(rh_element_add(s, st, &a) == RH_OK && rh_element_support(a) == 2);
    EXPECT(strlen(rh_element_str(a)) > 0);
    rh_element_free(a);
  }
  EXPECT(rh_element_parse(q, "2*x", &st) == RH_ERR_VALIDATION);
  EXPECT(rh_param_parse(g, "s=2", &q) == RH_ERR_VALIDATION);
  rh_element_free(s);
  rh_element_free(ss);
  rh_element_free(st);
  rh_param_free(q);
  rh_graph_free(g);
}

static void reports(void) {
  rh_graph* g = NULL;
  rh_param* q = NULL;
  rh_report* r = NULL;
  const double kappas[] = {0.5, 1.0};
  rh_graph_builtin("square", &g);
  rh_param_uniform(g, 2.0, &q);
  EXPECT(rh_run_graph_check(g, &r) == RH_OK);
  EXPECT(strstr(rh_report_json(r), "\"schema\": 1") != NULL);
  EXPECT(rh_report_passed(r) == 1);
  rh_report_free(r);
  EXPECT(rh_run_counterexample(q, 2, &r) == RH_OK);
  EXPECT(strncmp(rh_report_csv(r), "n,x_norm", 8) == 0);
  EXPECT(strlen(rh_report_summary(r)) > 0);
  rh_report_free(r);
  EXPECT(rh_run_decompose(q, "us", 3, 1, 1e-10, &r) == RH_OK);
  rh_report_free(r);
  EXPECT(rh_run_schur_gram(g, kappas, 2, 2, &r) == RH_OK);
  rh_report_free(r);
  EXPECT(rh_run_ball(g, 2, 0, NULL, &r) == RH_OK);
  rh_report_free(r);
  /* the square graph has an induced square: no q -> 1 experiment */
  r = NULL;
  EXPECT(rh_run_converge(g, kappas, 2, 0.5, 2, 3, 2, 1, 1, 1.0, &r) == RH_ERR_VALIDATION && r == NULL);
  rh_param_free(q);
  rh_graph_free(g);
}

int main(void) {
  EXPECT(strlen(rh_version()) > 0);
  rh_set_threads(1);
  graphs();
  elements();
  reports();
  if (failures) fprintf(stderr, "%d C API check(s) failed\n", failures);
  else printf("C API checks passed\n");
  return failures ? 1 : 0;
}
