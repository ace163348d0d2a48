#include <doctest.h>

#include <cmath>

#include "oracles.hpp"

using namespace rahecke;
using hecke::HeckeElement;
using hecke::MultiParameter;

TEST_CASE("C_q") {
  CHECK(metrics::c_q(MultiParameter::uniform(oracle::named("pentagon"), 1.0)) == 1.0);
  CHECK(metrics::c_q(MultiParameter::uniform(oracle::make_graph(1, {}), 4.0)) == doctest::Approx(1.5));
  CHECK(metrics::c_q(MultiParameter::uniform(oracle::named("square"), 4.0)) == doctest::Approx(2.25));
  CHECK(metrics::c_q(MultiParameter::uniform(oracle::named("square"), 0.25)) == doctest::Approx(2.25));
  // continuity toward q = 1
  double prev = 2.0;
  for (double qv : {1.5, 1.1, 1.01, 1.001}) {
    const double c = metrics::c_q(MultiParameter::uniform(oracle::named("square"), qv));
    CHECK(c >= 1.0);
    CHECK(c <= prev);
    prev = c;
  }
  CHECK(prev == doctest::Approx(1.0));
}

TEST_CASE("Haagerup ratio basics") {
  auto q = MultiParameter::uniform(oracle::named("pentagon"), 2.0);
  const auto one = HeckeElement::one(q);
  CHECK(metrics::haagerup_ratio(one, 2, 2, 3) == doctest::Approx(1.0));
  CHECK(metrics::haagerup_ratio(one, 1, 2, 3) == 0.0);
  const auto s = io::parse_element("s1", q);
  CHECK(metrics::haagerup_ratio(s, 1, 0, 2) == doctest::Approx(1.0));
  const auto x = io::parse_element("s1s3 + 2*s2s4", q);
  CHECK(metrics::haagerup_ratio(x, 5, 2, 3) == 0.0);
  CHECK(metrics::haagerup_ratio(x, 0, 3, 3) == 0.0);
  CHECK_THROWS_AS(metrics::haagerup_ratio(HeckeElement(q), 0, 0, 1), ValidationError);
  CHECK_THROWS_AS(metrics::haagerup_ratio(x, 0, 4, 3), ValidationError);
  CHECK_THROWS_AS(metrics::haagerup_ratio(x, 6, 3, 3), ValidationError);
}

TEST_CASE("dihedral group algebra ratios stay below one") {
  const auto rep = metrics::haagerup_scan(MultiParameter::uniform(oracle::named("dihedral"), 1.0), 3, 4, 10, 3);
  CHECK(rep.hyperbolic);
  CHECK(rep.max_ratio <= 1.0 + 1e-12);
  CHECK(rep.k_emp == doctest::Approx(rep.max_ratio));
}

TEST_CASE("scan is reproducible from the seed") {
  auto q = MultiParameter::uniform(oracle::named("pentagon"), 2.0);
  const auto a = metrics::haagerup_scan(q, 2, 3, 5, 9);
  const auto b = metrics::haagerup_scan(q, 2, 3, 5, 9);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t k = 0; k < a.records.size(); ++k) CHECK(a.records[k].max_ratio == b.records[k].max_ratio);
  CHECK(a.k_emp == b.k_emp);
  // every clique product is below 1 at q = 2, so the empty clique sets the constant
  CHECK(a.c_q == 1.0);
}

TEST_CASE("counterexample family") {
  auto q = MultiParameter::uniform(oracle::named("square"), 2.0);
  const auto one = metrics::verify_counterexample(1, q);
  CHECK(one.block_norm == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(one.ratio == doctest::Approx(1.0).epsilon(1e-14));
  const auto two = metrics::verify_counterexample(2, q);
  CHECK(two.block_norm_sq == doctest::Approx(0.875).epsilon(1e-14));
  CHECK(two.ratio == doctest::Approx(std::sqrt(1.75)).epsilon(1e-14));
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto r = metrics::verify_counterexample(n, q);
    CHECK(r.x_norm == doctest::Approx(1.0 / std::sqrt(static_cast<double>(n))).epsilon(1e-15));
    CHECK(r.xi_norm == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(r.block_norm_sq - oracle::counterexample_block_sq(n)) <= 1e-12);
    CHECK(r.passed);
    // Direct matrix-vector product on the ball.
    const auto x = metrics::counterexample_element(n, q);
    const auto xi = metrics::counterexample_vector(n, q);
    const auto m = gns::matrix_of(x, 4 * n);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(m.cols()));
    for (const auto& [w, c] : xi.coeffs()) v(static_cast<Eigen::Index>(m.domain()->index(coxeter::normalize(w, q.graph())))) = c;
    const Eigen::VectorXcd out = m.matrix() * v;
    double sq = 0.0;
    for (std::size_t r2 = 0; r2 < m.rows(); ++r2)
      if (m.row_word(r2).length() == 6 * n) sq += std::norm(out(static_cast<Eigen::Index>(r2)));
    CHECK(std::abs(sq - r.block_norm_sq) <= 1e-12);
  }
  CHECK_THROWS_AS(metrics::verify_counterexample(1, MultiParameter::uniform(oracle::named("pentagon"), 2.0)),
                  ValidationError);
  CHECK_THROWS_AS(metrics::verify_counterexample(0, q), ValidationError);
}

TEST_CASE("tuple counts against literal enumeration") {
  auto e = [](const coxeter::GraphPtr& g) { return coxeter::NormalWord::identity(*g); };
  auto pent = oracle::named("pentagon");
  CHECK(metrics::count_tuples(e(pent), e(pent), 0) == 1);
  StableRng rng(12);
  for (const char* name : {"dihedral", "square", "pentagon"}) {
    auto g = oracle::named(name);
    const auto b = coxeter::ball(g, 2);
    for (int k = 0; k < 6; ++k) {
      const auto& x = b->word(rng.below(b->size()));
      const auto& y = b->word(rng.below(b->size()));
      const std::size_t i = rng.below(3);
      CHECK(metrics::count_tuples(x, y, i) == oracle::brute_count_tuples(*g, x.letters(), y.letters(), i));
    }
  }
}

TEST_CASE("tuple scan is exhaustive and order-free") {
  auto g = oracle::named("pentagon");
  const auto a = metrics::tuple_scan(g, 2, 2, 2, 1);
  const auto b = metrics::tuple_scan(g, 2, 2, 2, 99);
  CHECK(a.bound == b.bound);
  CHECK(a.max_by_i == b.max_by_i);
  CHECK(a.argmax_x == b.argmax_x);
  CHECK(a.argmax_y == b.argmax_y);
  const auto ball = coxeter::ball(g, 2);
  CHECK(a.evaluated == ball->size() * ball->size() * 3);
  std::uint64_t best = 0;
  for (const auto& x : ball->words())
    for (const auto& y : ball->words())
      for (std::size_t i = 0; i <= 2; ++i) best = std::max(best, metrics::count_tuples(x, y, i));
  CHECK(a.bound == best);
}

TEST_CASE("band tail diagnostic") {
  auto q = MultiParameter::uniform(oracle::named("dihedral"), 2.0);
  const auto st = io::parse_element("st", q);
  CHECK(metrics::tail_band_check(st, 2, 4).lhs_lower == 0.0);
  // Band 1 keeps only the |i - j| = 2 blocks of T_st.
  const auto r = metrics::tail_band_check(st, 1, 4);
  const auto full = gns::compress_ball(gns::matrix_of(st, 4), 4, 4);
  Eigen::MatrixXcd d = full.dense();
  for (Eigen::Index a = 0; a < d.rows(); ++a)
    for (Eigen::Index c = 0; c < d.cols(); ++c) {
      const long la = static_cast<long>(full.row_word(static_cast<std::size_t>(a)).length());
      const long lc = static_cast<long>(full.col_word(static_cast<std::size_t>(c)).length());
      if (std::abs(la - lc) <= 1) d(a, c) = 0.0;
    }
  CHECK(r.lhs_lower == doctest::Approx(oracle::dense_norm(d)).epsilon(1e-12));
  CHECK(r.lhs_lower > 0.0);
  StableRng rng(4);
  auto pq = MultiParameter::uniform(oracle::named("pentagon"), 2.0);
  for (int k = 0; k < 5; ++k) CHECK(metrics::tail_band_check(schur::random_self_adjoint(pq, 2, rng), 1, 3).holds);
}
