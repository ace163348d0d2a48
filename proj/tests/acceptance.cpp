// Acceptance suite: one PASS/FAIL line per criterion with its measurements.
// Usage: rahecke_acceptance [criterion numbers...]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>

#include "oracles.hpp"

using namespace rahecke;
using hecke::HeckeElement;
using hecke::MultiParameter;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

const char* kGraphs[] = {"dihedral", "square", "pentagon"};
const double kQs[] = {0.25, 1.0, 4.0};

HeckeElement random_element(const MultiParameter& q, std::size_t max_deg, std::size_t terms, StableRng& rng) {
  const auto b = coxeter::ball(q.graph_ptr(), max_deg);
  HeckeElement x(q);
  for (std::size_t k = 0; k < terms; ++k) x.add(b->word(rng.below(b->size())).letters(), rng.complex_normal());
  return x;
}

// Relative coefficient deviation, scaled by the larger operand.
double rel_diff(const HeckeElement& a, const HeckeElement& b) {
  double scale = 1.0;
  for (const auto& [w, c] : a.coeffs()) scale = std::max(scale, std::abs(c));
  return hecke::max_coeff_difference(a, b) / scale;
}

void algebra_axioms(Outcome& out) {
  StableRng rng(1);
  double quad = 0, assoc = 0, orth = 0, tracial = 0;
  for (const char* name : kGraphs)
    for (double qv : kQs) {
      auto q = MultiParameter::uniform(oracle::named(name), qv);
      for (coxeter::Generator s = 0; s < q.graph().rank(); ++s) {
        const auto t = HeckeElement::basis(q, coxeter::Letters{s});
        quad = std::max(quad, hecke::max_coeff_difference(hecke::multiply(t, t), HeckeElement::one(q) + q.p(s) * t));
      }
      for (int k = 0; k < 100; ++k) {
        const auto x = random_element(q, 3, 3, rng), y = random_element(q, 3, 3, rng), z = random_element(q, 3, 3, rng);
        assoc = std::max(assoc, rel_diff(hecke::multiply(hecke::multiply(x, y), z), hecke::multiply(x, hecke::multiply(y, z))));
        const Complex a = hecke::trace(hecke::multiply(x, y)), b = hecke::trace(hecke::multiply(y, x));
        tracial = std::max(tracial, std::abs(a - b) / std::max(1.0, std::abs(a)));
      }
      const auto ball = coxeter::ball(q.graph_ptr(), 3);
      for (const auto& v : ball->words()) {
        const auto sv = hecke::star(HeckeElement::basis(q, v));
        for (const auto& w : ball->words()) {
          const Complex t = hecke::trace(hecke::multiply(sv, HeckeElement::basis(q, w)));
          orth = std::max(orth, std::abs(t - Complex(v == w ? 1.0 : 0.0)));
        }
      }
    }
  out.detail << "quadratic " << quad << ", associativity " << assoc << ", trace orthogonality " << orth
             << ", traciality " << tracial;
  out.require(quad <= 1e-12, "quadratic relation");
  out.require(assoc <= 1e-12, "associativity");
  out.require(orth <= 1e-12, "trace orthogonality");
  out.require(tracial <= 1e-12, "traciality");
}

void decomposition(Outcome& out) {
  double worst = 0.0;
  std::size_t words = 0, max_wit = 0, uniq_words = 0;
  for (const char* name : kGraphs) {
    auto g = oracle::named(name);
    for (double qv : kQs) {
      auto q = MultiParameter::uniform(g, qv);
      for (const auto& w : coxeter::ball(g, 4)->words()) {
        const auto d = wick::decompose(w, q, w.length() + 2);
        worst = std::max(worst, gns::max_abs_difference(d.op, gns::matrix_of(HeckeElement::basis(q, w), w.length() + 2)));
        max_wit = std::max(max_wit, d.max_witnesses);
        ++words;
      }
    }
    // Exhaustive witness count over every tuple for |w| <= 5.
    for (const auto& w : coxeter::ball(g, 5)->words()) {
      const wick::SigmaTable table(w);
      for (std::size_t l = 0; l <= w.length(); ++l)
        for (const auto& g0 : coxeter::cliques(*g, static_cast<int>(l)))
          for (std::size_t k = 0; k + l <= w.length(); ++k)
            for (const auto& [g1, g2] : coxeter::comm_pairs(*g, g0))
              max_wit = std::max(max_wit, table.witnesses(l, k, g0, g1, g2).size());
      ++uniq_words;
    }
  }
  out.detail << words << " (w, q) pairs, max deviation " << worst << "; " << uniq_words
             << " words with |w| <= 5, max witnesses per tuple " << max_wit;
  out.require(worst <= 1e-10, "decomposition identity");
  out.require(max_wit <= 1, "sigma uniqueness");
}

void counterexample(Outcome& out) {
  auto q = MultiParameter::uniform(oracle::named("square"), 2.0);
  double norm_dev = 0, oracle_dev = 0, direct_dev = 0, min_margin = 1e9, min_block = 1e9;
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto r = metrics::verify_counterexample(n, q);
    norm_dev = std::max({norm_dev, std::abs(r.x_norm - 1.0 / std::sqrt(static_cast<double>(n))),
                         std::abs(r.xi_norm - 1.0)});
    oracle_dev = std::max(oracle_dev, std::abs(r.block_norm_sq - oracle::counterexample_block_sq(n)));
    // Independent route: the GNS matrix applied to the vector xi_n.
    const auto m = gns::matrix_of(metrics::counterexample_element(n, q), 4 * n);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(m.cols()));
    const auto xi = metrics::counterexample_vector(n, q);
    for (const auto& [w, c] : xi.coeffs())
      v(static_cast<Eigen::Index>(m.domain()->index(coxeter::normalize(w, q.graph())))) = c;
    const Eigen::VectorXcd img = m.matrix() * v;
    double sq = 0.0;
    for (std::size_t k = 0; k < m.rows(); ++k)
      if (m.row_word(k).length() == 6 * n) sq += std::norm(img(static_cast<Eigen::Index>(k)));
    direct_dev = std::max(direct_dev, std::abs(sq - r.block_norm_sq));
    min_margin = std::min(min_margin, r.ratio - std::sqrt(static_cast<double>(n) / 2.0));
    min_block = std::min(min_block, r.block_norm);
  }
  out.detail << "norm deviation " << norm_dev << ", block_sq vs formula " << oracle_dev << ", vs direct "
             << direct_dev << ", min(ratio - sqrt(n/2)) " << min_margin << ", min block norm " << min_block;
  out.require(norm_dev <= 1e-15, "exact norms");
  out.require(oracle_dev <= 1e-12 && direct_dev <= 1e-12, "block norm");
  out.require(min_margin >= 0.0, "ratio bound");
  out.require(min_block >= 1.0 / std::sqrt(2.0), "block norm lower bound");
}

void haagerup(Outcome& out) {
  for (const char* name : {"pentagon", "dihedral"}) {
    const auto rep = metrics::haagerup_scan(MultiParameter::uniform(oracle::named(name), 2.0), 3, 5, 50, 7);
    const double k2 = rep.k_by_n[2], k3 = rep.k_by_n[3];
    out.detail << name << " K2 " << k2 << " K3 " << k3 << " max ratio " << rep.max_ratio << "; ";
    out.require(std::isfinite(rep.max_ratio) && rep.max_ratio > 0, std::string(name) + " finite ratio");
    out.require(k3 <= 2.0 * k2 && k2 <= 2.0 * k3, std::string(name) + " K stability");
  }
  // Square graph: the family of degree 2m exceeds sqrt(m/2).
  const auto sq = metrics::haagerup_scan(MultiParameter::uniform(oracle::named("square"), 2.0), 4, 8, 20, 7);
  for (std::size_t m = 1; m <= 2; ++m) {
    const double r = sq.max_ratio_by_n[2 * m], bound = std::sqrt(static_cast<double>(m) / 2.0);
    out.detail << "square degree " << 2 * m << " max ratio " << r << " vs " << bound << "; ";
    out.require(r >= bound, "square scan at degree " + std::to_string(2 * m));
  }
}

void tuples(Outcome& out) {
  auto g = oracle::named("pentagon");
  const auto a = metrics::tuple_scan(g, 3, 3, 4, 1);
  const auto b = metrics::tuple_scan(g, 3, 3, 4, 2);
  out.detail << a.evaluated << " triples, bound " << a.bound << " at (" << a.argmax_x << ", " << a.argmax_y << ", "
             << a.argmax_i << "), rerun bound " << b.bound;
  out.require(a.bound == b.bound && a.max_by_i == b.max_by_i, "stable under reseeding");
  out.require(a.evaluated > 0 && a.bound < std::uint64_t{1} << 40, "bounded");
}

void schur_suite(Outcome& out) {
  double min_eig = 1e9, eigen_rel = 0, intertwine = 0;
  bool ineq = true;
  for (const char* name : kGraphs) {
    auto g = oracle::named(name);
    for (std::size_t r = 0; r <= 4; ++r)
      for (double k : {0.3, 0.5, 0.7, 0.95, 1.0})
        min_eig = std::min(min_eig, schur::gram_check(k, *coxeter::ball(g, r)).min_eigenvalue);
    auto one = MultiParameter::uniform(g, 1.0);
    for (const auto& w : coxeter::ball(g, 3)->words()) {
      const auto m = gns::compress_ball(gns::matrix_of(HeckeElement::basis(one, w), 4), 4, 4);
      const Eigen::MatrixXcd d = schur::schur_map(0.5, m).dense() - std::pow(0.5, static_cast<double>(w.length())) * m.dense();
      eigen_rel = std::max(eigen_rel, d.size() ? d.cwiseAbs().maxCoeff() : 0.0);
    }
  }
  StableRng rng(5);
  auto q = MultiParameter::uniform(oracle::named("pentagon"), 2.0);
  for (int k = 0; k < 50; ++k) {
    const auto x = random_element(q, 2, 6, rng);
    const auto r = schur::commutator_intertwine_check(x, 0.3 + 0.65 * rng.uniform(), 3);
    intertwine = std::max(intertwine, r.max_deviation);
    ineq = ineq && r.norm_inequality;
  }
  out.detail << "min Gram eigenvalue " << min_eig << ", eigen-relation " << eigen_rel << ", intertwine "
             << intertwine << ", norm inequality " << (ineq ? "holds" : "violated");
  out.require(min_eig >= -1e-10, "Gram positivity");
  out.require(eigen_rel <= 1e-12, "eigen-relation");
  out.require(intertwine <= 1e-12, "intertwining");
  out.require(ineq, "norm inequality");
}

// Nonincreasing along the grid, allowing single inversions of at most 10%.
bool trend_ok(const std::vector<double>& v) {
  for (std::size_t k = 1; k < v.size(); ++k)
    if (v[k] > v[k - 1] * 1.10 + 1e-15) return false;
  return true;
}

void convergence(Outcome& out) {
  schur::ConvergenceConfig cfg;
  cfg.q_grid = {2, 1.5, 1.2, 1.1, 1.05, 1.01};
  cfg.kappa = 0.5;
  cfg.support = 2;
  cfg.radius = 4;
  cfg.samples = 20;
  cfg.seed = 11;
  const auto rep = schur::convergence_experiment(oracle::named("pentagon"), cfg);
  std::vector<double> c, f, g1, g2;
  for (const auto& r : rep.rows) {
    c.push_back(r.c_q1);
    f.push_back(r.f_q1);
    g1.push_back(r.gap_dir1);
    g2.push_back(r.gap_dir2);
  }
  bool strict = true;
  for (std::size_t k = 1; k < c.size(); ++k) strict = strict && c[k] < c[k - 1] && f[k] < f[k - 1];
  out.detail << "K " << rep.k_emp << ", gap_dir1 " << g1.front() << " -> " << g1.back() << ", gap_dir2 "
             << g2.front() << " -> " << g2.back();
  out.require(strict, "C and F strictly decreasing");
  out.require(trend_ok(g1) && trend_ok(g2), "gap trend");
  out.require(g1.back() < 0.05 && g2.back() < 0.05, "gaps below 0.05 at q = 1.01");
}

void combinatorics(Outcome& out) {
  std::size_t checked = 0, mismatches = 0;
  std::vector<coxeter::GraphPtr> graphs{oracle::named("dihedral"), oracle::named("square"), oracle::named("pentagon"),
                               oracle::make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {0, 2}, {3, 4}})};
  for (const auto& g : graphs) {
    coxeter::Letters w;
    std::function<void()> rec = [&] {
      ++checked;
      if (coxeter::normalize_letters(*g, w) != oracle::brute_normalize(*g, w)) ++mismatches;
      if (w.size() == 6) return;
      for (coxeter::Generator s = 0; s < g->rank(); ++s) {
        w.push_back(s);
        rec();
        w.pop_back();
      }
    };
    rec();
  }
  // Square graph group is D_inf x D_inf; its growth series is ((1+t)/(1-t))^2.
  const auto sizes = coxeter::ball(oracle::named("square"), 6)->sphere_sizes();
  bool balls = sizes.size() == 7;
  for (std::size_t n = 0; n <= 6 && balls; ++n) {
    const std::int64_t expect = n == 0 ? 1 : static_cast<std::int64_t>(4 * n);
    balls = static_cast<std::int64_t>(sizes[n]) == expect;
  }
  StableRng rng(50);
  std::size_t agree = 0;
  for (int k = 0; k < 50; ++k) {
    auto g = oracle::random_graph(2 + rng.below(6), rng.uniform(), rng);
    const auto a = coxeter::graph_analysis(*g);
    if (a.hyperbolic == !oracle::has_induced_square(*g) &&
        (!a.square_witness || oracle::is_induced_square(*g, *a.square_witness)))
      ++agree;
  }
  out.detail << checked << " words, " << mismatches << " mismatches; square ball sizes "
             << (balls ? "match" : "differ") << "; graph analysis " << agree << "/50";
  out.require(mismatches == 0, "normal form");
  out.require(balls, "ball sizes");
  out.require(agree == 50, "graph analysis");
}

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  void (*run)(Outcome&);
};

}  // namespace

int main(int argc, char** argv) {
  const Criterion all[] = {
      {1, "algebra axioms", 10, algebra_axioms},
      {2, "decomposition identity", 120, decomposition},
      {3, "counterexample exactness", 5, counterexample},
      {4, "Haagerup scan", 300, haagerup},
      {5, "tuple count boundedness", 120, tuples},
      {6, "Schur suite", 60, schur_suite},
      {7, "convergence trend", 300, convergence},
      {8, "combinatorial oracles", 60, combinatorics},
  };
  std::set<int> only;
  for (int k = 1; k < argc; ++k) only.insert(std::atoi(argv[k]));
  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) out.require(false, "runtime budget " + std::to_string(c.budget_s) + " s");
    std::printf("%s criterion %d (%s) %.2fs: %s\n", out.pass ? "PASS" : "FAIL", c.id, c.title, secs,
                out.detail.str().c_str());
    std::fflush(stdout);
    if (!out.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
