// rahecke: command-line front end over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rahecke/rahecke.h"

namespace {

struct Common {
  std::string graph;
  std::string q = "all=1";
  std::string out;
  std::string format;
  unsigned threads = 0;
};

struct Handles {
  rh_graph* graph = nullptr;
  rh_param* param = nullptr;
  std::vector<rh_element*> elements;
  rh_report* report = nullptr;
  ~Handles() {
    for (auto* e : elements) rh_element_free(e);
    rh_report_free(report);
    rh_param_free(param);
    rh_graph_free(graph);
  }
};

// Thrown to unwind with a status after the message has been printed.
struct Exit {
  int code;
};

void check(rh_status st) {
  if (st == RH_OK) return;
  std::cerr << "error: " << rh_last_error() << "\n";
  throw Exit{static_cast<int>(st)};
}

std::vector<double> split_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      std::cerr << "error: \"" << item << "\" is not a number\n";
      throw Exit{1};
    }
  }
  if (out.empty()) {
    std::cerr << "error: empty number list\n";
    throw Exit{1};
  }
  return out;
}

// Prints the summary, writes the requested file, and turns the run status
// into the exit code. Verification failures still write their report.
int finish(const Common& c, rh_status st, rh_report* report) {
  if (!report) {
    check(st);
    return 0;
  }
  std::string format = c.format;
  if (format.empty()) {
    const bool csv = c.out.size() >= 4 && c.out.compare(c.out.size() - 4, 4, ".csv") == 0;
    format = csv ? "csv" : "json";
  }
  std::string body = format == "csv" ? rh_report_csv(report) : rh_report_json(report);
  if (format == "csv" && body.empty()) {
    std::cerr << "error: this command has no CSV table; use --format json\n";
    return 1;
  }
  std::cout << rh_report_summary(report);
  if (!c.out.empty()) {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << c.out << "\n";
      return 1;
    }
    f << body;
    std::cout << "wrote " << c.out << "\n";
  } else if (!c.format.empty()) {
    std::cout << body;
  }
  if (st != RH_OK) std::cerr << "error: " << rh_last_error() << "\n";
  return static_cast<int>(st);
}

void add_common(CLI::App* app, Common& c, const std::string& default_graph, bool with_q) {
  c.graph = default_graph;
  app->add_option("--graph", c.graph, "built-in graph (dihedral, square, pentagon) or JSON file")
      ->capture_default_str();
  if (with_q) app->add_option("--q", c.q, "parameters, e.g. all=2 or s=1.5,t=2")->capture_default_str();
  app->add_option("--out", c.out, "report file");
  app->add_option("--format", c.format, "csv or json (default: from --out extension, else json)")
      ->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--threads", c.threads, "worker cap, 0 = all cores")->check(CLI::Range(0u, 1024u));
}

void load(const Common& c, Handles& h, bool with_q) {
  rh_set_threads(c.threads);
  check(rh_graph_load(c.graph.c_str(), &h.graph));
  if (with_q) check(rh_param_parse(h.graph, c.q.c_str(), &h.param));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Right-angled Hecke algebras: normal forms, GNS truncations and metric experiments"};
  app.set_version_flag("--version", std::string(rh_version()));
  app.require_subcommand(1);

  std::function<int()> run;

  // graph check
  Common graph_c;
  auto* graph = app.add_subcommand("graph", "graph utilities");
  graph->require_subcommand(1);
  auto* graph_check = graph->add_subcommand("check", "hyperbolicity test with induced-square witness");
  add_common(graph_check, graph_c, "", false);
  graph_check->get_option("--graph")->required();
  graph_check->callback([&] {
    run = [&] {
      Handles h;
      load(graph_c, h, false);
      const auto st = rh_run_graph_check(h.graph, &h.report);
      return finish(graph_c, st, h.report);
    };
  });

  // ball
  Common ball_c;
  std::size_t ball_radius = 3;
  bool ball_delta = false;
  std::string ball_cache;
  auto* ball = app.add_subcommand("ball", "enumerate the ball of a given radius");
  add_common(ball, ball_c, "", false);
  ball->get_option("--graph")->required();
  ball->add_option("--radius", ball_radius, "radius")->capture_default_str()->check(CLI::Range(0, 40));
  ball->add_flag("--delta", ball_delta, "compute the four-point constant over the ball");
  ball->add_option("--cache", ball_cache, "ball cache file (read if valid, else written)");
  ball->callback([&] {
    run = [&] {
      Handles h;
      load(ball_c, h, false);
      const auto st = rh_run_ball(h.graph, ball_radius, ball_delta ? 1 : 0,
                                  ball_cache.empty() ? nullptr : ball_cache.c_str(), &h.report);
      return finish(ball_c, st, h.report);
    };
  });

  // mul
  Common mul_c;
  std::vector<std::string> mul_terms;
  auto* mul = app.add_subcommand("mul", "multiply element literals left to right");
  add_common(mul, mul_c, "square", true);
  mul->add_option("elements", mul_terms, "element literals, e.g. \"us\" \"0.5*e - 2i*s\"")->required();
  mul->callback([&] {
    run = [&] {
      Handles h;
      load(mul_c, h, true);
      rh_element* acc = nullptr;
      for (const auto& lit : mul_terms) {
        rh_element* e = nullptr;
        check(rh_element_parse(h.param, lit.c_str(), &e));
        h.elements.push_back(e);
        if (!acc) {
          acc = e;
        } else {
          rh_element* prod = nullptr;
          check(rh_element_mul(acc, e, &prod));
          h.elements.push_back(prod);
          acc = prod;
        }
      }
      const auto st = rh_run_element("mul", acc, &h.report);
      return finish(mul_c, st, h.report);
    };
  });

  // trace
  Common trace_c;
  std::string trace_lit;
  auto* trace = app.add_subcommand("trace", "trace and l2 norm of an element");
  add_common(trace, trace_c, "square", true);
  trace->add_option("element", trace_lit, "element literal")->required();
  trace->callback([&] {
    run = [&] {
      Handles h;
      load(trace_c, h, true);
      rh_element* e = nullptr;
      check(rh_element_parse(h.param, trace_lit.c_str(), &e));
      h.elements.push_back(e);
      const auto st = rh_run_element("trace", e, &h.report);
      return finish(trace_c, st, h.report);
    };
  });

  // decompose
  Common dec_c;
  std::string dec_word;
  std::size_t dec_radius = 3;
  bool dec_verify = false;
  double dec_tol = 1e-10;
  auto* dec = app.add_subcommand("decompose", "ladder-operator decomposition of T_w");
  add_common(dec, dec_c, "square", true);
  dec->add_option("--word", dec_word, "word w")->required();
  dec->add_option("--radius", dec_radius, "domain radius N")->capture_default_str()->check(CLI::Range(0, 30));
  dec->add_flag("--verify", dec_verify, "compare with the matrix of T_w");
  dec->add_option("--tolerance", dec_tol, "entrywise tolerance for --verify")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  dec->callback([&] {
    run = [&] {
      Handles h;
      load(dec_c, h, true);
      const auto st =
          rh_run_decompose(h.param, dec_word.c_str(), dec_radius, dec_verify ? 1 : 0, dec_tol, &h.report);
      return finish(dec_c, st, h.report);
    };
  });

  // haagerup scan | counterexample
  auto* haag = app.add_subcommand("haagerup", "block-norm experiments");
  haag->require_subcommand(1);
  Common scan_c;
  std::size_t scan_nmax = 3, scan_radius = 5, scan_samples = 50;
  std::uint64_t scan_seed = 0;
  auto* scan = haag->add_subcommand("scan", "empirical constant of the block inequality");
  add_common(scan, scan_c, "pentagon", true);
  scan->add_option("--nmax", scan_nmax, "largest degree")->capture_default_str()->check(CLI::Range(1, 20));
  scan->add_option("--radius", scan_radius, "ball radius")->capture_default_str()->check(CLI::Range(0, 30));
  scan->add_option("--samples", scan_samples, "random samples per degree")
      ->capture_default_str()
      ->check(CLI::Range(0, 100000));
  scan->add_option("--seed", scan_seed, "RNG seed")->required();
  scan->callback([&] {
    run = [&] {
      Handles h;
      load(scan_c, h, true);
      const auto st = rh_run_haagerup_scan(h.param, scan_nmax, scan_radius, scan_samples, scan_seed, &h.report);
      return finish(scan_c, st, h.report);
    };
  });

  Common cx_c;
  std::size_t cx_n = 1;
  auto* cx = haag->add_subcommand("counterexample", "square-graph family violating the inequality");
  add_common(cx, cx_c, "square", true);
  cx->add_option("--n", cx_n, "family index")->required()->check(CLI::Range(1, 200));
  cx->callback([&] {
    run = [&] {
      Handles h;
      load(cx_c, h, true);
      const auto st = rh_run_counterexample(h.param, cx_n, &h.report);
      return finish(cx_c, st, h.report);
    };
  });

  // tuples
  Common tup_c;
  std::size_t tup_x = 3, tup_y = 3, tup_i = 4;
  std::uint64_t tup_seed = 1;
  auto* tup = app.add_subcommand("tuples", "exhaustive tuple-count scan");
  add_common(tup, tup_c, "pentagon", false);
  tup->add_option("--max-x", tup_x, "largest |x|")->capture_default_str()->check(CLI::Range(0, 12));
  tup->add_option("--max-y", tup_y, "largest |y|")->capture_default_str()->check(CLI::Range(0, 12));
  tup->add_option("--max-i", tup_i, "largest i")->capture_default_str()->check(CLI::Range(0, 16));
  tup->add_option("--seed", tup_seed, "visit-order seed (result is seed independent)")->capture_default_str();
  tup->callback([&] {
    run = [&] {
      Handles h;
      load(tup_c, h, false);
      const auto st = rh_run_tuples(h.graph, tup_x, tup_y, tup_i, tup_seed, &h.report);
      return finish(tup_c, st, h.report);
    };
  });

  // schur gram | check
  auto* schur = app.add_subcommand("schur", "Schur multiplier checks");
  schur->require_subcommand(1);
  Common gram_c;
  std::string gram_kappas = "0.3,0.5,0.7,0.95,1";
  std::size_t gram_radius = 3;
  auto* gram = schur->add_subcommand("gram", "positivity of the kernel kappa^d(u,v) on a ball");
  add_common(gram, gram_c, "pentagon", false);
  gram->add_option("--kappa", gram_kappas, "comma-separated values in (0,1]")->capture_default_str();
  gram->add_option("--radius", gram_radius, "ball radius")->capture_default_str()->check(CLI::Range(0, 8));
  gram->callback([&] {
    run = [&] {
      Handles h;
      load(gram_c, h, false);
      const auto ks = split_doubles(gram_kappas);
      const auto st = rh_run_schur_gram(h.graph, ks.data(), ks.size(), gram_radius, &h.report);
      return finish(gram_c, st, h.report);
    };
  });

  Common sc_c;
  std::string sc_element, sc_q2 = "all=1";
  double sc_kappa = 0.5, sc_k = 0.0;
  std::size_t sc_radius = 4;
  std::optional<std::uint64_t> sc_seed;
  auto* sc = schur->add_subcommand("check", "intertwining, magnitude and banded estimates for one element");
  add_common(sc, sc_c, "pentagon", true);
  sc->add_option("--element", sc_element, "element literal")->required();
  sc->add_option("--q2", sc_q2, "second parameter q'")->capture_default_str();
  sc->add_option("--kappa", sc_kappa, "Schur parameter")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  sc->add_option("--radius", sc_radius, "ball radius")->capture_default_str()->check(CLI::Range(0, 20));
  sc->add_option("--k-emp", sc_k, "constant for the banded estimate (scanned when absent)")
      ->check(CLI::PositiveNumber);
  sc->add_option("--seed", sc_seed, "seed for the constant scan; required without --k-emp");
  sc->callback([&] {
    run = [&] {
      if (sc_k <= 0.0 && !sc_seed) {
        std::cerr << "error: --seed is required when --k-emp is not given\n";
        return 1;
      }
      Handles h;
      load(sc_c, h, true);
      rh_element* e = nullptr;
      check(rh_element_parse(h.param, sc_element.c_str(), &e));
      h.elements.push_back(e);
      rh_param* q2 = nullptr;
      check(rh_param_parse(h.graph, sc_q2.c_str(), &q2));
      const auto st = rh_run_schur_check(e, q2, sc_kappa, sc_radius, sc_k, sc_seed.value_or(0), &h.report);
      rh_param_free(q2);
      return finish(sc_c, st, h.report);
    };
  });

  // converge
  Common conv_c;
  std::string conv_grid = "2,1.5,1.2,1.1,1.05,1.01";
  double conv_kappa = 0.5;
  std::optional<double> conv_k;
  std::size_t conv_support = 2, conv_radius = 4, conv_samples = 20;
  std::uint64_t conv_seed = 0;
  auto* conv = app.add_subcommand("converge", "q -> 1 approximation experiment");
  add_common(conv, conv_c, "pentagon", false);
  conv->add_option("--qgrid", conv_grid, "comma-separated q values")->capture_default_str();
  conv->add_option("--kappa", conv_kappa, "Schur parameter in (0,1)")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  conv->add_option("--support", conv_support, "word-length support of the samples")
      ->capture_default_str()
      ->check(CLI::Range(1, 8));
  conv->add_option("--radius", conv_radius, "ball radius")->capture_default_str()->check(CLI::Range(1, 20));
  conv->add_option("--samples", conv_samples, "samples per pool")
      ->capture_default_str()
      ->check(CLI::Range(1, 100000));
  conv->add_option("--seed", conv_seed, "RNG seed")->required();
  conv->add_option("--k-emp", conv_k, "constant K (scanned when absent)")->check(CLI::PositiveNumber);
  conv->callback([&] {
    run = [&] {
      Handles h;
      load(conv_c, h, false);
      const auto grid = split_doubles(conv_grid);
      const auto st = rh_run_converge(h.graph, grid.data(), grid.size(), conv_kappa, conv_support, conv_radius,
                                      conv_samples, conv_seed, conv_k ? 1 : 0, conv_k.value_or(0.0), &h.report);
      return finish(conv_c, st, h.report);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  try {
    return run ? run() : 1;
  } catch (const Exit& e) {
    return e.code;
  }
}
