#include "rahecke/schur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace rahecke::schur {

using coxeter::Letters;
using gns::SparseMatrix;

namespace {

void check_kappa(double kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0)) throw ValidationError("kappa must lie in (0, 1]");
}

double safe_ratio(double num, double den) {
  if (num == 0.0) return 0.0;
  return den == 0.0 ? std::numeric_limits<double>::infinity() : num / den;
}

}  // namespace

TruncatedOperator schur_weights(double kappa, const TruncatedOperator& op) {
  check_kappa(kappa);
  SparseMatrix m = op.matrix();
  const std::size_t r0 = op.row_offset(), c0 = op.col_offset();
  for (std::int64_t c = 0; c < m.outerSize(); ++c) {
    // T_w sends delta_u to delta_{wu}, so the weight of entry (v, u) is kappa^{|v u^-1|}.
    const auto u_inv = op.domain()->word(c0 + static_cast<std::size_t>(c)).inverse();
    for (SparseMatrix::InnerIterator it(m, c); it; ++it) {
      const auto& v = op.codomain()->word(r0 + static_cast<std::size_t>(it.row()));
      it.valueRef() *= std::pow(kappa, static_cast<double>(coxeter::mul_word(v, u_inv).length()));
    }
  }
  return TruncatedOperator(op.domain(), op.codomain(), op.row_window(), op.col_window(), std::move(m));
}

TruncatedOperator schur_map(double kappa, const TruncatedOperator& op) {
  if (op.row_window().lo != op.col_window().lo || op.row_window().hi != op.col_window().hi)
    throw ValidationError("schur_map needs a square compression");
  return schur_weights(kappa, op);
}

GramResult gram_check(double kappa, const BallBasis& basis) {
  check_kappa(kappa);
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = a; b < n; ++b) {
      const auto d = coxeter::word_distance(basis.word(static_cast<std::size_t>(a)),
                                            basis.word(static_cast<std::size_t>(b)));
      gram(a, b) = gram(b, a) = std::pow(kappa, static_cast<double>(d));
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
  GramResult out;
  out.dimension = basis.size();
  out.min_eigenvalue = solver.eigenvalues().minCoeff();
  out.passed = out.min_eigenvalue >= -1e-10;
  return out;
}

IntertwineResult commutator_intertwine_check(const HeckeElement& x, double kappa, std::size_t N) {
  const auto m = gns::compress_ball(gns::matrix_of(x, N), N, N);
  const auto commutator = gns::dirac_weights(m);
  const auto lhs = gns::dirac_weights(schur_map(kappa, m));
  const auto rhs = schur_map(kappa, commutator);
  IntertwineResult out;
  out.max_deviation = gns::max_abs_difference(lhs, rhs);
  out.lhs_norm = gns::operator_norm(lhs);
  out.rhs_norm = gns::operator_norm(commutator);
  out.norm_inequality = out.lhs_norm <= out.rhs_norm * (1.0 + 1e-9) + 1e-12;
  return out;
}

double c_qq(const MultiParameter& q, const MultiParameter& q2) {
  coxeter::require_same_graph(q.graph(), q2.graph());
  double best = 0.0;
  for (auto clique : coxeter::cliques(q.graph()))
    best = std::max(best, std::abs(q.p_product(clique) - q2.p_product(clique)));
  return best;
}

namespace {

void require_homogeneous(const HeckeElement& x) {
  if (x.is_zero()) return;
  const std::size_t n = x.coeffs().begin()->first.size();
  for (const auto& [w, c] : x.coeffs())
    if (w.size() != n) throw ValidationError("element is not homogeneous");
}

// x - x^(q') as operators on ball(N) with the exact codomain.
TruncatedOperator difference(const HeckeElement& x, const MultiParameter& q2, std::size_t N) {
  return gns::matrix_of(x, N) - gns::matrix_of(hecke::reparametrize(x, q2), N);
}

}  // namespace

BandedResult banded_difference_check(const HeckeElement& x, const MultiParameter& q2, double kappa,
                                     std::size_t i, std::size_t j, std::size_t N, double k_emp) {
  check_kappa(kappa);
  require_homogeneous(x);
  const auto block = gns::compress_block(difference(x, q2, N), i, j);
  BandedResult out;
  out.lhs = gns::operator_norm(schur_weights(kappa, block));
  const double gap = static_cast<double>(i > j ? i - j : j - i);
  out.rhs = std::pow(kappa, gap) * k_emp * c_qq(x.param(), q2) * hecke::l2_norm(x);
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-9) + 1e-12;
  return out;
}

MagnitudeResult magnitude_check(const HeckeElement& x, const MultiParameter& q2, double kappa,
                                std::size_t N) {
  check_kappa(kappa);
  if (kappa == 1.0) throw ValidationError("magnitude bounds need kappa < 1");
  const auto d = schur_map(kappa, gns::compress_ball(difference(x, q2, N), N, N));
  MagnitudeResult out;
  out.norm_gap = gns::operator_norm(d);
  out.commutator_gap = gns::operator_norm(gns::dirac_weights(d));
  out.lip = gns::lip_lower_bound(x, N);
  const double c = c_qq(x.param(), q2);
  out.norm_gap_ratio = safe_ratio(out.norm_gap, c * out.lip / (1.0 - kappa));
  out.commutator_gap_ratio =
      safe_ratio(out.commutator_gap, kappa * c * out.lip / ((1.0 - kappa) * (1.0 - kappa)));
  return out;
}

HeckeElement random_self_adjoint(const MultiParameter& q, std::size_t support, StableRng& rng) {
  const auto b = coxeter::ball(q.graph_ptr(), support);
  HeckeElement x(q);
  for (std::size_t k = 1; k < b->size(); ++k) {
    const Letters& w = b->word(k).letters();
    const Letters inv = coxeter::canonical_order(q.graph(), coxeter::inverse_letters(w));
    if (inv == w) {
      x.add(w, rng.normal());
    } else if (coxeter::ShortLex{}(w, inv)) {
      const Complex c = rng.complex_normal();
      x.add(w, c);
      x.add(inv, std::conj(c));
    }
  }
  return x;
}

ConvergenceReport convergence_experiment(const coxeter::GraphPtr& graph,
                                         const ConvergenceConfig& config) {
  check_kappa(config.kappa);
  if (config.kappa == 1.0) throw ValidationError("convergence experiment needs kappa < 1");
  if (config.q_grid.empty()) throw ValidationError("empty q grid");
  if (config.samples == 0) throw ValidationError("need at least one sample");
  if (config.support == 0) throw ValidationError("support must be at least 1");
  if (!coxeter::graph_analysis(*graph).hyperbolic)
    throw ValidationError("graph contains an induced square; the q -> 1 statement does not apply");

  ConvergenceReport rep;
  rep.config = config;
  const auto one = MultiParameter::uniform(graph, 1.0);
  if (config.k_emp) {
    rep.k_emp = *config.k_emp;
    rep.k_source = "given";
  } else {
    const double q_top = *std::max_element(config.q_grid.begin(), config.q_grid.end());
    const auto scan = metrics::haagerup_scan(MultiParameter::uniform(graph, q_top), config.support,
                                             config.radius, config.samples, config.seed);
    rep.k_emp = scan.k_emp;
    rep.k_source = "haagerup_scan q=" + format12(q_top) + " nmax=" + std::to_string(config.support) +
                   " radius=" + std::to_string(config.radius);
  }

  const std::size_t N = config.radius;
  const double kappa = config.kappa;
  // One seeded pool of coefficient maps serves every row.
  StableRng rng(config.seed);
  std::vector<HeckeElement> pool1, pool2;
  for (std::size_t s = 0; s < config.samples; ++s) {
    HeckeElement x = random_self_adjoint(one, config.support, rng);
    x *= 1.0 / gns::lip_lower_bound(x, N);
    pool1.push_back(std::move(x));
  }
  for (std::size_t s = 0; s < config.samples; ++s)
    pool2.push_back(random_self_adjoint(one, config.support, rng));

  rep.rows.resize(config.q_grid.size());
  parallel_for(config.q_grid.size(), [&](std::size_t r) {
    const double qv = config.q_grid[r];
    const auto q = MultiParameter::uniform(graph, qv);
    ConvergenceRow row;
    row.q = qv;
    row.kappa = kappa;
    row.c_q1 = c_qq(q, one);
    row.f_q1 = kappa * rep.k_emp / ((1.0 - kappa) * (1.0 - kappa)) * row.c_q1;
    row.samples = config.samples;
    row.radius = N;
    for (const auto& x : pool1) {
      // y = (L1(x) / Lq(x^(q))) x^(q) with L1(x) = 1.
      HeckeElement y = hecke::reparametrize(x, q);
      y *= 1.0 / gns::lip_lower_bound(y, N);
      const double gap = gns::operator_norm(gns::matrix_of(x, N) - gns::matrix_of(y, N));
      row.gap_dir1 = std::max(row.gap_dir1, gap);
    }
    for (const auto& sample : pool2) {
      HeckeElement xbar = hecke::reparametrize(sample, q);
      xbar *= 1.0 / gns::lip_lower_bound(xbar, N);
      const auto mq = gns::matrix_of(xbar, N);
      const auto m1 = gns::matrix_of(hecke::reparametrize(xbar, one), N);
      const auto smooth_q = schur_weights(kappa, mq);
      const auto y1 = gns::scaled(schur_weights(kappa, m1), 1.0 / (1.0 + row.f_q1));
      // The scalar part tau(x) 1 is common to x, y^(q) and y^(1) and cancels.
      row.gap_dir2 = std::max(row.gap_dir2, gns::operator_norm(smooth_q - y1));
      row.gap_dir2_total = std::max(row.gap_dir2_total, gns::operator_norm(mq - y1));
      row.smoothing_dir2 = std::max(row.smoothing_dir2, gns::operator_norm(mq - smooth_q));
    }
    rep.rows[r] = row;
  });
  return rep;
}

}  // namespace rahecke::schur
