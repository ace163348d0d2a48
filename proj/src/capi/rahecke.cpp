#include "rahecke/rahecke.h"

#include <exception>
#include <new>
#include <string>

#include "rahecke/io.hpp"
#include "rahecke/report.hpp"

struct rh_graph {
  rahecke::coxeter::GraphPtr ptr;
};

struct rh_param {
  rahecke::hecke::MultiParameter value;
};

struct rh_element {
  rahecke::hecke::HeckeElement value;
  mutable std::string text;
};

struct rh_report {
  rahecke::report::Report value;
  std::string json;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_word;

rh_status fail(rh_status code, const char* what) {
  last_error = what;
  return code;
}

// Maps the exception taxonomy onto status codes.
template <class F>
rh_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const rahecke::ValidationError& e) {
    return fail(RH_ERR_VALIDATION, e.what());
  } catch (const rahecke::ResourceError& e) {
    return fail(RH_ERR_RESOURCE, e.what());
  } catch (const rahecke::VerificationError& e) {
    return fail(RH_ERR_VERIFICATION, e.what());
  } catch (const std::bad_alloc&) {
    return fail(RH_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(RH_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RH_ERR_INTERNAL, "unknown error");
  }
}

#define RH_REQUIRE(cond, msg) \
  if (!(cond)) return fail(RH_ERR_VALIDATION, msg)

rh_status emit(rahecke::report::Report&& r, rh_report** out) {
  auto* h = new rh_report{std::move(r), {}};
  h->json = h->value.json.dump(2) + "\n";
  *out = h;
  if (!h->value.passed) {
    last_error = "verification failed";
    return RH_ERR_VERIFICATION;
  }
  return RH_OK;
}

}  // namespace

extern "C" {

const char* rh_version(void) { return rahecke::kVersion; }
const char* rh_last_error(void) { return last_error.c_str(); }
void rh_set_threads(unsigned threads) { rahecke::set_max_threads(threads); }

rh_status rh_graph_builtin(const char* name, rh_graph** out) {
  return guarded([&] {
    RH_REQUIRE(name && out, "null argument");
    auto g = rahecke::io::builtin_graph(name);
    RH_REQUIRE(g, "unknown built-in graph");
    *out = new rh_graph{std::move(g)};
    return RH_OK;
  });
}

rh_status rh_graph_from_json(const char* text, rh_graph** out) {
  return guarded([&] {
    RH_REQUIRE(text && out, "null argument");
    *out = new rh_graph{rahecke::io::parse_graph_json(text)};
    return RH_OK;
  });
}

rh_status rh_graph_load(const char* name_or_path, rh_graph** out) {
  return guarded([&] {
    RH_REQUIRE(name_or_path && out, "null argument");
    *out = new rh_graph{rahecke::io::resolve_graph(name_or_path)};
    return RH_OK;
  });
}

void rh_graph_free(rh_graph* graph) { delete graph; }

size_t rh_graph_rank(const rh_graph* graph) { return graph ? graph->ptr->rank() : 0; }

const char* rh_graph_hash(const rh_graph* graph) {
  return graph ? graph->ptr->content_hash().c_str() : nullptr;
}

const char* rh_graph_generator(const rh_graph* graph, size_t index) {
  if (!graph || index >= graph->ptr->rank()) return nullptr;
  return graph->ptr->name(static_cast<rahecke::coxeter::Generator>(index)).c_str();
}

rh_status rh_graph_is_hyperbolic(const rh_graph* graph, int* hyperbolic) {
  return guarded([&] {
    RH_REQUIRE(graph && hyperbolic, "null argument");
    *hyperbolic = rahecke::coxeter::graph_analysis(*graph->ptr).hyperbolic ? 1 : 0;
    return RH_OK;
  });
}

rh_status rh_graph_normalize(const rh_graph* graph, const char* word, const char** out) {
  return guarded([&] {
    RH_REQUIRE(graph && word && out, "null argument");
    last_word = rahecke::io::parse_word(word, *graph->ptr).str();
    *out = last_word.c_str();
    return RH_OK;
  });
}

rh_status rh_param_parse(const rh_graph* graph, const char* spec, rh_param** out) {
  return guarded([&] {
    RH_REQUIRE(graph && spec && out, "null argument");
    *out = new rh_param{rahecke::io::parse_q(spec, graph->ptr)};
    return RH_OK;
  });
}

rh_status rh_param_uniform(const rh_graph* graph, double q, rh_param** out) {
  return guarded([&] {
    RH_REQUIRE(graph && out, "null argument");
    *out = new rh_param{rahecke::hecke::MultiParameter::uniform(graph->ptr, q)};
    return RH_OK;
  });
}

void rh_param_free(rh_param* param) { delete param; }

rh_status rh_element_parse(const rh_param* param, const char* literal, rh_element** out) {
  return guarded([&] {
    RH_REQUIRE(param && literal && out, "null argument");
    *out = new rh_element{rahecke::io::parse_element(literal, param->value), {}};
    return RH_OK;
  });
}

rh_status rh_element_mul(const rh_element* a, const rh_element* b, rh_element** out) {
  return guarded([&] {
    RH_REQUIRE(a && b && out, "null argument");
    *out = new rh_element{rahecke::hecke::multiply(a->value, b->value), {}};
    return RH_OK;
  });
}

rh_status rh_element_add(const rh_element* a, const rh_element* b, rh_element** out) {
  return guarded([&] {
    RH_REQUIRE(a && b && out, "null argument");
    *out = new rh_element{a->value + b->value, {}};
    return RH_OK;
  });
}

rh_status rh_element_star(const rh_element* a, rh_element** out) {
  return guarded([&] {
    RH_REQUIRE(a && out, "null argument");
    *out = new rh_element{rahecke::hecke::star(a->value), {}};
    return RH_OK;
  });
}

rh_status rh_element_trace(const rh_element* a, double* re, double* im) {
  return guarded([&] {
    RH_REQUIRE(a && re && im, "null argument");
    const auto t = rahecke::hecke::trace(a->value);
    *re = t.real();
    *im = t.imag();
    return RH_OK;
  });
}

rh_status rh_element_l2_norm(const rh_element* a, double* norm) {
  return guarded([&] {
    RH_REQUIRE(a && norm, "null argument");
    *norm = rahecke::hecke::l2_norm(a->value);
    return RH_OK;
  });
}

rh_status rh_element_coeff(const rh_element* a, const char* word, double* re, double* im) {
  return guarded([&] {
    RH_REQUIRE(a && word && re && im, "null argument");
    const auto c = a->value.coeff(rahecke::io::parse_word(word, a->value.graph()));
    *re = c.real();
    *im = c.imag();
    return RH_OK;
  });
}

size_t rh_element_support(const rh_element* a) { return a ? a->value.support_size() : 0; }

const char* rh_element_str(const rh_element* a) {
  if (!a) return nullptr;
  a->text = a->value.str();
  return a->text.c_str();
}

void rh_element_free(rh_element* a) { delete a; }

rh_status rh_run_graph_check(const rh_graph* graph, rh_report** out) {
  return guarded([&] {
    RH_REQUIRE(graph && out, "null argument");
    return emit(rahecke::report::graph_check(graph->ptr), out);
  });
}

rh_status rh_run_ball(const rh_graph* graph, size_t radius, int four_point, const char* cache_path,
                      rh_report** out) {
  return guarded([&] {
    RH_REQUIRE(graph && out, "null argument");
    std::optional<std::string> cache;
    if (cache_path) cache = cache_path;
    return emit(rahecke::report::ball(graph->ptr, radius, four_point != 0, cache), out);
  });
}

rh_status rh_run_element(const char* command, const rh_element* x, rh_report** out) {
  return guarded([&] {
    RH_REQUIRE(command && x && out, "null argument");
    return emit(rahecke::report::element(command, x->value, {}), out);
  });
}

rh_status rh_run_decompose(const rh_param* param, const char* word, size_t radius, int verify,
                           double tolerance, rh_report** out) {
  return guarded([&] {
    RH_REQUIRE(param && word && out, "null argument");
    const auto w = rahecke::io::parse_word(word, param->value.graph());
    return emit(rahecke::report::decompose(w, param->value, radius, verify != 0, tolerance), out);
  });
}

rh_status rh_run_haagerup_scan(const rh_param* param, size_t n_max, size_t radius, size_t samples,
                               uint64_t seed, rh_report** out) {
  return guarded([&] {
    RH_REQUIRE(param && out, "null argument");
    RH_REQUIRE(n_max >= 1, "nmax must be at least 1");
    return emit(rahecke::report::haagerup_scan(param->value, n_max, radius, samples, seed), out);
  });
}

rh_status rh_run_counterexample(const rh_param* param, size_t n, rh_report** out) {
  return guarded([&] {
    RH_REQUIRE(param && out, "null argument");
    return emit(rahecke::report::counterexample(param->value, n), out);
  });
}

rh_status rh_run_tuples(const rh_graph* graph, size_t max_x, size_t max_y, size_t max_i, uint64_t seed,
                        rh_report** out) {
  return guarded([&] {
    RH_REQUIRE(graph && out, "null argument");
    return emit(rahecke::report::tuples(graph->ptr, max_x, max_y, max_i, seed), out);
  });
}

rh_status rh_run_schur_gram(const rh_graph* graph, const double* kappas, size_t count, size_t radius,
                            rh_report** out) {
  return guarded([&] {
    RH_REQUIRE(graph && kappas && out, "null argument");
    RH_REQUIRE(count > 0, "no kappa values");
    return emit(rahecke::report::schur_gram(graph->ptr, {kappas, kappas + count}, radius), out);
  });
}

rh_status rh_run_schur_check(const rh_element* x, const rh_param* q2, double kappa, size_t radius,
                             double k_emp, uint64_t seed, rh_report** out) {
  return guarded([&] {
    RH_REQUIRE(x && q2 && out, "null argument");
    std::optional<double> k;
    if (k_emp > 0.0) k = k_emp;
    return emit(rahecke::report::schur_check(x->value, q2->value, kappa, radius, k, seed), out);
  });
}

rh_status rh_run_converge(const rh_graph* graph, const double* q_grid, size_t count, double kappa,
                          size_t support, size_t radius, size_t samples, uint64_t seed, int has_k_emp,
                          double k_emp, rh_report** out) {
  return guarded([&] {
    RH_REQUIRE(graph && q_grid && out, "null argument");
    rahecke::schur::ConvergenceConfig c;
    c.q_grid.assign(q_grid, q_grid + count);
    c.kappa = kappa;
    c.support = support;
    c.radius = radius;
    c.samples = samples;
    c.seed = seed;
    if (has_k_emp) c.k_emp = k_emp;
    return emit(rahecke::report::converge(graph->ptr, c), out);
  });
}

const char* rh_report_json(const rh_report* report) { return report ? report->json.c_str() : nullptr; }
const char* rh_report_csv(const rh_report* report) { return report ? report->value.csv.c_str() : nullptr; }
const char* rh_report_summary(const rh_report* report) {
  return report ? report->value.summary.c_str() : nullptr;
}
int rh_report_passed(const rh_report* report) { return report && report->value.passed ? 1 : 0; }
void rh_report_free(rh_report* report) { delete report; }

}  // extern "C"
