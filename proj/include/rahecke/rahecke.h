#ifndef RAHECKE_RAHECKE_H
#define RAHECKE_RAHECKE_H

/* C interface to the right-angled Hecke algebra toolkit.
 *
 * All objects are opaque handles released with the matching *_free call.
 * Every fallible call returns an rh_status; on failure rh_last_error()
 * describes the problem (thread-local, valid until the next call on the
 * same thread). Strings returned by accessors live as long as their handle. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RAHECKE_BUILDING)
#    define RH_API __declspec(dllexport)
#  else
#    define RH_API __declspec(dllimport)
#  endif
#else
#  define RH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rh_status {
  RH_OK = 0,
  RH_ERR_VALIDATION = 1,
  RH_ERR_RESOURCE = 2,
  RH_ERR_VERIFICATION = 3,
  RH_ERR_INTERNAL = 4
} rh_status;

typedef struct rh_graph rh_graph;
typedef struct rh_param rh_param;
typedef struct rh_element rh_element;
typedef struct rh_report rh_report;

RH_API const char* rh_version(void);
RH_API const char* rh_last_error(void);
/* 0 restores the default (hardware concurrency). */
RH_API void rh_set_threads(unsigned threads);

/* graphs */
RH_API rh_status rh_graph_builtin(const char* name, rh_graph** out);
RH_API rh_status rh_graph_from_json(const char* text, rh_graph** out);
/* A built-in name ("dihedral", "square", "pentagon") or a JSON file path. */
RH_API rh_status rh_graph_load(const char* name_or_path, rh_graph** out);
RH_API void rh_graph_free(rh_graph* graph);
RH_API size_t rh_graph_rank(const rh_graph* graph);
RH_API const char* rh_graph_hash(const rh_graph* graph);
RH_API const char* rh_graph_generator(const rh_graph* graph, size_t index);
/* Writes 1 to *hyperbolic when the graph has no induced square. */
RH_API rh_status rh_graph_is_hyperbolic(const rh_graph* graph, int* hyperbolic);
/* Normal form of a word such as "s1s3s1"; the result lives until the next
 * call to this function on the same thread. */
RH_API rh_status rh_graph_normalize(const rh_graph* graph, const char* word, const char** out);

/* parameters: "all=2", "s=1.5,t=2", or a mix */
RH_API rh_status rh_param_parse(const rh_graph* graph, const char* spec, rh_param** out);
RH_API rh_status rh_param_uniform(const rh_graph* graph, double q, rh_param** out);
RH_API void rh_param_free(rh_param* param);

/* elements: literals like "1.0*e + 0.5*st - 2*us" */
RH_API rh_status rh_element_parse(const rh_param* param, const char* literal, rh_element** out);
RH_API rh_status rh_element_mul(const rh_element* a, const rh_element* b, rh_element** out);
RH_API rh_status rh_element_add(const rh_element* a, const rh_element* b, rh_element** out);
RH_API rh_status rh_element_star(const rh_element* a, rh_element** out);
RH_API rh_status rh_element_trace(const rh_element* a, double* re, double* im);
RH_API rh_status rh_element_l2_norm(const rh_element* a, double* norm);
RH_API rh_status rh_element_coeff(const rh_element* a, const char* word, double* re, double* im);
RH_API size_t rh_element_support(const rh_element* a);
RH_API const char* rh_element_str(const rh_element* a);
RH_API void rh_element_free(rh_element* a);

/* Reports. Each runner stores a report in *out even when it returns
 * RH_ERR_VERIFICATION, so the failing numbers can still be inspected. */
RH_API rh_status rh_run_graph_check(const rh_graph* graph, rh_report** out);
/* cache_path may be NULL. */
RH_API rh_status rh_run_ball(const rh_graph* graph, size_t radius, int four_point, const char* cache_path,
                             rh_report** out);
/* command is "mul" or "trace"; the element is the one reported. */
RH_API rh_status rh_run_element(const char* command, const rh_element* x, rh_report** out);
RH_API rh_status rh_run_decompose(const rh_param* param, const char* word, size_t radius, int verify,
                                  double tolerance, rh_report** out);
RH_API rh_status rh_run_haagerup_scan(const rh_param* param, size_t n_max, size_t radius, size_t samples,
                                      uint64_t seed, rh_report** out);
RH_API rh_status rh_run_counterexample(const rh_param* param, size_t n, rh_report** out);
RH_API rh_status rh_run_tuples(const rh_graph* graph, size_t max_x, size_t max_y, size_t max_i,
                               uint64_t seed, rh_report** out);
RH_API rh_status rh_run_schur_gram(const rh_graph* graph, const double* kappas, size_t count,
                                   size_t radius, rh_report** out);
/* k_emp <= 0 requests a scan for the constant seeded with seed. */
RH_API rh_status rh_run_schur_check(const rh_element* x, const rh_param* q2, double kappa, size_t radius,
                                    double k_emp, uint64_t seed, rh_report** out);
/* has_k_emp == 0 requests a seeded scan for the constant. */
RH_API rh_status rh_run_converge(const rh_graph* graph, const double* q_grid, size_t count, double kappa,
                                 size_t support, size_t radius, size_t samples, uint64_t seed,
                                 int has_k_emp, double k_emp, rh_report** out);

RH_API const char* rh_report_json(const rh_report* report);
RH_API const char* rh_report_csv(const rh_report* report);
RH_API const char* rh_report_summary(const rh_report* report);
RH_API int rh_report_passed(const rh_report* report);
RH_API void rh_report_free(rh_report* report);

#ifdef __cplusplus
}
#endif

#endif
