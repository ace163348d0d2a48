#include "rahecke/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rahecke/wick.hpp"

namespace rahecke::report {

namespace {

Json graph_json(const coxeter::CoxeterGraph& g) {
  Json out;
  out["label"] = g.label();
  out["hash"] = g.content_hash();
  out["generators"] = g.names();
  Json pairs = Json::array();
  for (const auto& [a, b] : g.edges()) pairs.push_back({g.name(a), g.name(b)});
  out["commuting_pairs"] = pairs;
  return out;
}

Json q_json(const hecke::MultiParameter& q) {
  Json out;
  for (std::size_t s = 0; s < q.values().size(); ++s)
    out[q.graph().name(static_cast<coxeter::Generator>(s))] = num(q.values()[s]);
  return out;
}

Report start(const std::string& kind, const coxeter::CoxeterGraph& g, Json config) {
  Report r;
  r.json["schema"] = kSchemaVersion;
  r.json["kind"] = kind;
  r.json["version"] = kVersion;
  r.json["graph"] = graph_json(g);
  r.json["config"] = std::move(config);
  return r;
}

std::string flag(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string csv_line(std::initializer_list<std::string> fields) {
  std::string out;
  bool first = true;
  for (const auto& f : fields) {
    if (!first) out += ',';
    first = false;
    out += f;
  }
  return out + "\n";
}

}  // namespace

Json num(double v) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  return sig12(v);
}

Json num(Complex c) {
  if (c.imag() == 0.0) return num(c.real());
  return Json::array({num(c.real()), num(c.imag())});
}

Report graph_check(const coxeter::GraphPtr& g) {
  Report r = start("graph_check", *g, Json::object());
  const auto a = coxeter::graph_analysis(*g);
  Json res;
  res["rank"] = g->rank();
  res["edges"] = g->edges().size();
  res["hyperbolic"] = a.hyperbolic;
  std::ostringstream text;
  text << "graph " << (g->label().empty() ? "<unnamed>" : g->label()) << " hash=" << g->content_hash()
       << "\nrank=" << g->rank() << " edges=" << g->edges().size()
       << "\nhyperbolic=" << (a.hyperbolic ? "true" : "false");
  if (a.square_witness) {
    Json w = Json::array();
    for (auto s : *a.square_witness) w.push_back(g->name(s));
    res["square_witness"] = w;
    text << "\nwitness (induced square s1-s2-s3-s4):";
    for (auto s : *a.square_witness) text << " " << g->name(s);
  } else {
    res["square_witness"] = nullptr;
  }
  r.json["result"] = res;
  r.summary = text.str() + "\n";
  return r;
}

Report ball(const coxeter::GraphPtr& g, std::size_t radius, bool four_point,
            const std::optional<std::string>& cache) {
  Json config;
  config["radius"] = radius;
  config["four_point"] = four_point;
  Report r = start("ball", *g, config);
  coxeter::BallPtr b;
  bool from_cache = false;
  if (cache) {
    b = coxeter::load_ball_cache(*cache, g, radius);
    from_cache = b != nullptr;
  }
  if (!b) b = coxeter::ball(g, radius);
  if (cache && !from_cache) coxeter::save_ball_cache(*cache, *b);
  Json res;
  res["size"] = b->size();
  res["sphere_sizes"] = b->sphere_sizes();
  res["from_cache"] = from_cache;
  std::ostringstream text;
  text << "ball radius=" << radius << " size=" << b->size() << "\nsphere sizes:";
  for (auto s : b->sphere_sizes()) text << " " << s;
  text << "\n";
  if (four_point) {
    const auto fp = coxeter::four_point_delta(*b);
    res["four_point_delta"] = num(fp.delta);
    res["quadruples"] = fp.quadruples;
    text << "four-point delta=" << format12(fp.delta) << " over " << fp.quadruples << " quadruples\n";
  }
  r.json["result"] = res;
  r.csv = "index,length,word\n";
  for (std::size_t i = 0; i < b->size(); ++i)
    r.csv += csv_line({std::to_string(i), std::to_string(b->length_of(i)), b->word(i).str()});
  r.summary = text.str();
  return r;
}

Report element(const std::string& command, const hecke::HeckeElement& x,
               const std::vector<std::string>& inputs) {
  Json config;
  config["inputs"] = inputs;
  config["q"] = q_json(x.param());
  Report r = start(command, x.graph(), config);
  Json res;
  Json terms = Json::array();
  r.csv = "word,re,im\n";
  for (const auto& [w, c] : x.coeffs()) {
    const std::string word = x.graph().display(w);
    terms.push_back({{"word", word}, {"coeff", num(c)}});
    r.csv += csv_line({word, format12(c.real()), format12(c.imag())});
  }
  res["element"] = x.str();
  res["terms"] = terms;
  const Complex tau = hecke::trace(x);
  res["trace"] = num(tau);
  res["l2_norm"] = num(hecke::l2_norm(x));
  r.json["result"] = res;
  std::ostringstream text;
  if (command == "mul") text << x.str() << "\n";
  text << "trace=" << format12(tau.real());
  if (tau.imag() != 0.0) text << (tau.imag() < 0 ? "-" : "+") << format12(std::abs(tau.imag())) << "i";
  text << " l2_norm=" << format12(hecke::l2_norm(x)) << "\n";
  r.summary = text.str();
  return r;
}

Report decompose(const coxeter::NormalWord& w, const hecke::MultiParameter& q, std::size_t radius,
                 bool verify, double tolerance) {
  Json config;
  config["word"] = w.str();
  config["q"] = q_json(q);
  config["radius"] = radius;
  config["verify"] = verify;
  config["tolerance"] = num(tolerance);
  Report r = start("decompose", q.graph(), config);
  const auto d = wick::decompose(w, q, radius);
  Json res;
  res["tuples"] = d.tuples;
  res["contributing"] = d.contributing;
  res["max_witnesses"] = d.max_witnesses;
  res["nonzeros"] = d.op.matrix().nonZeros();
  std::ostringstream text;
  text << "decompose w=" << w.str() << " radius=" << radius << "\ntuples=" << d.tuples
       << " contributing=" << d.contributing << " max_witnesses=" << d.max_witnesses << "\n";
  if (verify) {
    const auto direct = gns::matrix_of(hecke::HeckeElement::basis(q, w), radius);
    const double dev = gns::max_abs_difference(d.op, direct);
    res["max_deviation"] = num(dev);
    r.passed = dev <= tolerance && d.max_witnesses <= 1;
    res["passed"] = r.passed;
    text << "max deviation=" << format12(dev) << " " << flag(r.passed) << "\n";
  }
  r.json["result"] = res;
  r.summary = text.str();
  return r;
}

Report haagerup_scan(const hecke::MultiParameter& q, std::size_t n_max, std::size_t radius,
                     std::size_t samples, std::uint64_t seed) {
  Json config;
  config["q"] = q_json(q);
  config["nmax"] = n_max;
  config["radius"] = radius;
  config["samples"] = samples;
  config["seed"] = seed;
  Report r = start("haagerup_scan", q.graph(), config);
  r.json["truncated_surrogate"] = true;
  const auto s = metrics::haagerup_scan(q, n_max, radius, samples, seed);
  Json res;
  res["hyperbolic"] = s.hyperbolic;
  res["c_q"] = num(s.c_q);
  Json by_n = Json::array();
  std::ostringstream text;
  text << "haagerup scan hyperbolic=" << (s.hyperbolic ? "true" : "false") << " C_q=" << format12(s.c_q)
       << "\n";
  for (std::size_t n = 1; n <= n_max; ++n) {
    by_n.push_back({{"n", n}, {"max_ratio", num(s.max_ratio_by_n[n])}, {"k", num(s.k_by_n[n])}});
    text << "n=" << n << " max_ratio=" << format12(s.max_ratio_by_n[n]) << " K=" << format12(s.k_by_n[n]);
    // The square family x_m lives in degree 2m and forces ratios >= sqrt(m/2).
    if (!s.hyperbolic && n % 2 == 0) text << " sqrt(m/2)=" << format12(std::sqrt(n / 4.0)) << " (m=" << n / 2 << ")";
    text << "\n";
  }
  res["by_n"] = by_n;
  res["max_ratio"] = num(s.max_ratio);
  res["k_emp"] = num(s.k_emp);
  Json recs = Json::array();
  for (const auto& rec : s.records)
    recs.push_back({{"kind", rec.kind}, {"n", rec.n}, {"max_ratio", num(rec.max_ratio)},
                    {"i", rec.best_i}, {"j", rec.best_j}});
  res["samples"] = recs;
  r.json["result"] = res;
  text << "K_emp=" << format12(s.k_emp) << "\n";
  r.summary = text.str();
  r.csv = "n,i,j,max_ratio\n";
  for (const auto& c : s.cells)
    r.csv += csv_line({std::to_string(c.n), std::to_string(c.i), std::to_string(c.j), format12(c.max_ratio)});
  return r;
}

Report counterexample(const hecke::MultiParameter& q, std::size_t n) {
  Json config;
  config["q"] = q_json(q);
  config["n"] = n;
  Report r = start("haagerup_counterexample", q.graph(), config);
  const auto c = metrics::verify_counterexample(n, q);
  Json res;
  res["x_norm"] = num(c.x_norm);
  res["xi_norm"] = num(c.xi_norm);
  res["block_norm"] = num(c.block_norm);
  res["block_norm_sq"] = num(c.block_norm_sq);
  res["ratio"] = num(c.ratio);
  res["bound"] = num(c.bound);
  res["passed"] = c.passed;
  r.json["result"] = res;
  r.passed = c.passed;
  r.csv = "n,x_norm,xi_norm,block_norm,block_norm_sq,ratio,bound,passed\n" +
          csv_line({std::to_string(n), format12(c.x_norm), format12(c.xi_norm), format12(c.block_norm),
                    format12(c.block_norm_sq), format12(c.ratio), format12(c.bound),
                    c.passed ? "true" : "false"});
  std::ostringstream text;
  text << "n=" << n << " ||x delta_e||=" << format12(c.x_norm) << " ||xi||=" << format12(c.xi_norm)
       << " ||P_6n x xi||=" << format12(c.block_norm) << "\nratio=" << format12(c.ratio)
       << " sqrt(n/2)=" << format12(c.bound) << " " << flag(c.passed) << "\n";
  r.summary = text.str();
  return r;
}

Report tuples(const coxeter::GraphPtr& g, std::size_t max_x, std::size_t max_y, std::size_t max_i,
              std::uint64_t seed) {
  Json config;
  config["max_x"] = max_x;
  config["max_y"] = max_y;
  config["max_i"] = max_i;
  config["seed"] = seed;
  Report r = start("tuples", *g, config);
  const auto s = metrics::tuple_scan(g, max_x, max_y, max_i, seed);
  Json res;
  res["evaluated"] = s.evaluated;
  res["bound"] = s.bound;
  res["max_by_i"] = s.max_by_i;
  res["argmax"] = {{"x", s.argmax_x}, {"y", s.argmax_y}, {"i", s.argmax_i}};
  r.json["result"] = res;
  r.csv = "i,max_count\n";
  for (std::size_t i = 0; i < s.max_by_i.size(); ++i)
    r.csv += csv_line({std::to_string(i), std::to_string(s.max_by_i[i])});
  std::ostringstream text;
  text << "evaluated " << s.evaluated << " triples; bound=" << s.bound << " at x=" << s.argmax_x
       << " y=" << s.argmax_y << " i=" << s.argmax_i << "\nmax by i:";
  for (auto v : s.max_by_i) text << " " << v;
  r.summary = text.str() + "\n";
  return r;
}

Report schur_gram(const coxeter::GraphPtr& g, const std::vector<double>& kappas, std::size_t radius) {
  Json config;
  config["kappas"] = kappas;
  config["radius"] = radius;
  Report r = start("schur_gram", *g, config);
  Json rows = Json::array();
  r.csv = "kappa,radius,dimension,min_eigenvalue,passed\n";
  std::ostringstream text;
  for (double kappa : kappas) {
    const auto res = schur::gram_check(kappa, *coxeter::ball(g, radius));
    rows.push_back({{"kappa", num(kappa)}, {"dimension", res.dimension},
                    {"min_eigenvalue", num(res.min_eigenvalue)}, {"passed", res.passed}});
    r.csv += csv_line({format12(kappa), std::to_string(radius), std::to_string(res.dimension),
                       format12(res.min_eigenvalue), res.passed ? "true" : "false"});
    text << "kappa=" << format12(kappa) << " dim=" << res.dimension
         << " min eigenvalue=" << format12(res.min_eigenvalue) << " " << flag(res.passed) << "\n";
    r.passed = r.passed && res.passed;
  }
  r.json["result"] = {{"rows", rows}, {"passed", r.passed}};
  r.summary = text.str();
  return r;
}

Report schur_check(const hecke::HeckeElement& x, const hecke::MultiParameter& q2, double kappa,
                   std::size_t radius, std::optional<double> k_emp, std::uint64_t seed) {
  Json config;
  config["element"] = x.str();
  config["q"] = q_json(x.param());
  config["q2"] = q_json(q2);
  config["kappa"] = num(kappa);
  config["radius"] = radius;
  config["k_emp"] = k_emp ? num(*k_emp) : Json(nullptr);
  config["seed"] = seed;
  Report r = start("schur_check", x.graph(), config);
  r.json["truncated_surrogate"] = true;
  Json res;
  std::ostringstream text;

  const auto it = schur::commutator_intertwine_check(x, kappa, radius);
  const bool it_ok = it.max_deviation <= 1e-12 && it.norm_inequality;
  res["intertwine"] = {{"max_deviation", num(it.max_deviation)},
                       {"lhs_norm", num(it.lhs_norm)},
                       {"rhs_norm", num(it.rhs_norm)},
                       {"norm_inequality", it.norm_inequality}};
  text << "intertwine deviation=" << format12(it.max_deviation) << " ||[D,m(x)]||=" << format12(it.lhs_norm)
       << " <= ||[D,x]||=" << format12(it.rhs_norm) << " " << flag(it_ok) << "\n";
  r.passed = it_ok;

  if (kappa < 1.0) {
    const auto m = schur::magnitude_check(x, q2, kappa, radius);
    res["magnitude"] = {{"norm_gap", num(m.norm_gap)},
                        {"commutator_gap", num(m.commutator_gap)},
                        {"lip", num(m.lip)},
                        {"norm_gap_ratio", num(m.norm_gap_ratio)},
                        {"commutator_gap_ratio", num(m.commutator_gap_ratio)}};
    text << "magnitude norm_gap=" << format12(m.norm_gap) << " commutator_gap=" << format12(m.commutator_gap)
         << " (ratios " << format12(m.norm_gap_ratio) << ", " << format12(m.commutator_gap_ratio) << ")\n";
  }

  const std::size_t deg = x.degree();
  bool homogeneous = !x.is_zero();
  for (const auto& [w, c] : x.coeffs()) homogeneous = homogeneous && w.size() == deg;
  if (homogeneous && deg > 0) {
    std::string source = "given";
    if (!k_emp) {
      k_emp = metrics::haagerup_scan(x.param(), deg, radius, 20, seed).k_emp;
      source = "haagerup_scan nmax=" + std::to_string(deg) + " radius=" + std::to_string(radius) +
               " samples=20 seed=" + std::to_string(seed);
    }
    Json cells = Json::array();
    bool all = true;
    r.csv = "i,j,lhs,rhs,holds\n";
    for (std::size_t j = 0; j <= radius; ++j)
      for (std::size_t i = (j > deg ? j - deg : 0); i <= j + deg; ++i) {
        const auto b = schur::banded_difference_check(x, q2, kappa, i, j, radius, *k_emp);
        cells.push_back({{"i", i}, {"j", j}, {"lhs", num(b.lhs)}, {"rhs", num(b.rhs)}, {"holds", b.holds}});
        r.csv += csv_line({std::to_string(i), std::to_string(j), format12(b.lhs), format12(b.rhs),
                           b.holds ? "true" : "false"});
        all = all && b.holds;
      }
    res["banded"] = {{"k_emp", num(*k_emp)}, {"k_source", source}, {"cells", cells}, {"all_hold", all}};
    text << "banded estimate over " << cells.size() << " blocks with K=" << format12(*k_emp) << " ("
         << source << "): " << flag(all) << "\n";
    r.passed = r.passed && all;
  } else {
    res["banded"] = nullptr;
    text << "banded estimate skipped: element is not homogeneous of positive degree\n";
  }
  res["passed"] = r.passed;
  r.json["result"] = res;
  r.summary = text.str();
  return r;
}

Report converge(const coxeter::GraphPtr& g, const schur::ConvergenceConfig& c) {
  Json config;
  Json grid = Json::array();
  for (double q : c.q_grid) grid.push_back(num(q));
  config["q_grid"] = grid;
  config["kappa"] = num(c.kappa);
  config["support"] = c.support;
  config["radius"] = c.radius;
  config["samples"] = c.samples;
  config["seed"] = c.seed;
  config["k_emp"] = c.k_emp ? num(*c.k_emp) : Json(nullptr);
  Report r = start("converge", *g, config);
  r.json["truncated_surrogate"] = true;
  const auto rep = schur::convergence_experiment(g, c);
  Json rows = Json::array();
  r.csv = "q,kappa,C_q1,F_q1,gap_dir1,gap_dir2,n_samples,radius,gap_dir2_total,smoothing_dir2\n";
  std::ostringstream text;
  text << "K_emp=" << format12(rep.k_emp) << " (" << rep.k_source << ")\n";
  for (const auto& row : rep.rows) {
    rows.push_back({{"q", num(row.q)},
                    {"kappa", num(row.kappa)},
                    {"C_q1", num(row.c_q1)},
                    {"F_q1", num(row.f_q1)},
                    {"gap_dir1", num(row.gap_dir1)},
                    {"gap_dir2", num(row.gap_dir2)},
                    {"n_samples", row.samples},
                    {"radius", row.radius},
                    {"gap_dir2_total", num(row.gap_dir2_total)},
                    {"smoothing_dir2", num(row.smoothing_dir2)}});
    r.csv += csv_line({format12(row.q), format12(row.kappa), format12(row.c_q1), format12(row.f_q1),
                       format12(row.gap_dir1), format12(row.gap_dir2), std::to_string(row.samples),
                       std::to_string(row.radius), format12(row.gap_dir2_total),
                       format12(row.smoothing_dir2)});
    text << "q=" << format12(row.q) << " C=" << format12(row.c_q1) << " F=" << format12(row.f_q1)
         << " gap1=" << format12(row.gap_dir1) << " gap2=" << format12(row.gap_dir2) << "\n";
  }
  r.json["result"] = {{"k_emp", num(rep.k_emp)}, {"k_source", rep.k_source}, {"rows", rows}};
  r.summary = text.str();
  return r;
}

}  // namespace rahecke::report
