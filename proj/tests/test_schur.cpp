#include <doctest.h>

#include <cmath>

#include "oracles.hpp"

using namespace rahecke;
using hecke::HeckeElement;
using hecke::MultiParameter;

namespace {

gns::TruncatedOperator square_matrix(const HeckeElement& x, std::size_t N) {
  return gns::compress_ball(gns::matrix_of(x, N), N, N);
}

}  // namespace

TEST_CASE("Schur multiplier on basis operators") {
  auto one = MultiParameter::uniform(oracle::named("pentagon"), 1.0);
  for (const auto& w : coxeter::ball(one.graph_ptr(), 2)->words()) {
    const auto m = square_matrix(HeckeElement::basis(one, w), 3);
    const auto mk = schur::schur_map(0.6, m);
    const Eigen::MatrixXcd expect = std::pow(0.6, static_cast<double>(w.length())) * m.dense();
    CHECK((mk.dense() - expect).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("Schur multiplier structure") {
  StableRng rng(21);
  auto q = MultiParameter::uniform(oracle::named("square"), 3.0);
  const auto x = schur::random_self_adjoint(q, 2, rng);
  const auto m = square_matrix(x, 3);
  CHECK(gns::max_abs_difference(schur::schur_map(1.0, m), m) == 0.0);
  const auto id = square_matrix(HeckeElement::one(q), 3);
  CHECK(gns::max_abs_difference(schur::schur_map(0.3, id), id) == 0.0);
  const Eigen::MatrixXcd a = schur::schur_map(0.4, schur::schur_map(0.7, m)).dense();
  const Eigen::MatrixXcd b = schur::schur_map(0.28, m).dense();
  CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((schur::schur_map(0.5, m).dense().cwiseAbs() - m.dense().cwiseAbs()).maxCoeff() <= 0.0);
  // Diagonal operators are fixed.
  const auto p = wick::q_projection(io::parse_word("u", q.graph()), coxeter::ball(q.graph_ptr(), 3));
  CHECK(gns::max_abs_difference(schur::schur_map(0.2, p), p) == 0.0);
  CHECK_THROWS_AS(schur::schur_map(0.0, m), ValidationError);
  CHECK_THROWS_AS(schur::schur_map(1.5, m), ValidationError);
  CHECK_THROWS_AS(schur::schur_map(0.5, gns::matrix_of(x, 2)), ValidationError);
}

TEST_CASE("Gram matrices") {
  const auto d1 = coxeter::ball(oracle::named("dihedral"), 1);
  const auto g = schur::gram_check(0.5, *d1);
  Eigen::Matrix3d ref;
  ref << 1, .5, .5, .5, 1, .25, .5, .25, 1;
  CHECK(g.min_eigenvalue == doctest::Approx(Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(ref).eigenvalues()(0)));
  CHECK(g.min_eigenvalue > 0.0);
  CHECK(std::abs(schur::gram_check(1.0, *d1).min_eigenvalue) <= 1e-12);
  for (double k : {0.3, 0.7, 0.95}) CHECK(schur::gram_check(k, *coxeter::ball(oracle::named("pentagon"), 3)).passed);
}

TEST_CASE("commutator intertwining") {
  StableRng rng(30);
  auto q = MultiParameter::uniform(oracle::named("pentagon"), 2.0);
  const auto ts = io::parse_element("s1", q);
  CHECK(schur::commutator_intertwine_check(ts, 0.5, 3).max_deviation <= 1e-12);
  for (int k = 0; k < 5; ++k) {
    const auto x = schur::random_self_adjoint(q, 2, rng);
    const auto r = schur::commutator_intertwine_check(x, 0.5, 3);
    CHECK(r.max_deviation <= 1e-12);
    CHECK(r.norm_inequality);
    CHECK(schur::commutator_intertwine_check(x, 1.0, 3).max_deviation == 0.0);
  }
}

TEST_CASE("C_{q,q'}") {
  auto g = oracle::named("pentagon");
  const auto q = MultiParameter::uniform(g, 1.1);
  const auto one = MultiParameter::uniform(g, 1.0);
  CHECK(schur::c_qq(q, q) == 0.0);
  const double p = 0.1 / std::sqrt(1.1);
  CHECK(schur::c_qq(q, one) == doctest::Approx(std::max(p, p * p)));
  double prev = 1e9;
  for (double qv : {1.5, 1.2, 1.15, 1.11, 1.101}) {
    const double c = schur::c_qq(q, MultiParameter::uniform(g, qv));
    CHECK(c < prev);
    prev = c;
  }
  CHECK(prev < 1e-3);
  prev = 1e9;
  for (double qv : {2.0, 1.5, 1.2, 1.1, 1.05, 1.01}) {
    const double c = schur::c_qq(MultiParameter::uniform(g, qv), one);
    CHECK(c < prev);
    prev = c;
  }
}

TEST_CASE("banded and magnitude checks") {
  auto g = oracle::named("pentagon");
  const auto q = MultiParameter::uniform(g, 2.0);
  const auto one = MultiParameter::uniform(g, 1.0);
  const auto x = io::parse_element("s1s3 - 0.5*s2s4", q);
  CHECK(schur::banded_difference_check(x, q, 0.5, 2, 2, 3, 1.0).lhs == 0.0);
  CHECK_THROWS_AS(schur::banded_difference_check(io::parse_element("s1 + s1s3", q), one, 0.5, 1, 1, 3, 1.0),
                  ValidationError);
  // kappa = 1 is a plain block ratio of the difference
  const auto b = schur::banded_difference_check(x, one, 1.0, 2, 2, 3, 1.0);
  const auto block = gns::compress_block(gns::matrix_of(x, 3) - gns::matrix_of(hecke::reparametrize(x, one), 3), 2, 2);
  CHECK(b.lhs == doctest::Approx(gns::operator_norm(block)).epsilon(1e-12));
  const auto mag = schur::magnitude_check(x, q, 0.5, 3);
  CHECK(mag.norm_gap == 0.0);
  CHECK(mag.commutator_gap == 0.0);
  CHECK_THROWS_AS(schur::magnitude_check(x, one, 1.0, 3), ValidationError);
  const auto m = schur::magnitude_check(x, one, 0.5, 3);
  CHECK(std::isfinite(m.norm_gap_ratio));
  CHECK(m.norm_gap > 0.0);
}

TEST_CASE("random self-adjoint samples") {
  StableRng rng(1);
  auto q = MultiParameter::uniform(oracle::named("square"), 2.0);
  for (int k = 0; k < 5; ++k) {
    const auto x = schur::random_self_adjoint(q, 2, rng);
    CHECK(hecke::trace(x) == Complex{});
    CHECK(hecke::max_coeff_difference(hecke::star(x), x) <= 1e-15);
    CHECK(x.degree() == 2);
  }
}

TEST_CASE("convergence experiment") {
  schur::ConvergenceConfig cfg;
  cfg.q_grid = {1.5, 1.1, 1.0};
  cfg.samples = 4;
  cfg.radius = 3;
  cfg.k_emp = 1.0;
  const auto rep = schur::convergence_experiment(oracle::named("pentagon"), cfg);
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.k_source == "given");
  CHECK(rep.rows[0].c_q1 > rep.rows[1].c_q1);
  CHECK(rep.rows[2].c_q1 == 0.0);
  CHECK(rep.rows[2].gap_dir1 <= 1e-12);
  CHECK(rep.rows[2].gap_dir2 <= 1e-12);
  CHECK(rep.rows[0].gap_dir1 > rep.rows[1].gap_dir1);
  const auto again = schur::convergence_experiment(oracle::named("pentagon"), cfg);
  CHECK(again.rows[1].gap_dir2 == rep.rows[1].gap_dir2);
  CHECK_THROWS_AS(schur::convergence_experiment(oracle::named("square"), cfg), ValidationError);
  cfg.kappa = 1.0;
  CHECK_THROWS_AS(schur::convergence_experiment(oracle::named("pentagon"), cfg), ValidationError);
}
