#include <doctest.h>

#include <sstream>

#include "oracles.hpp"

using namespace rahecke;
using hecke::HeckeElement;
using hecke::MultiParameter;

namespace {

HeckeElement random_element(const MultiParameter& q, std::size_t max_deg, std::size_t terms, StableRng& rng) {
  const auto b = coxeter::ball(q.graph_ptr(), max_deg);
  HeckeElement x(q);
  for (std::size_t k = 0; k < terms; ++k) x.add(b->word(rng.below(b->size())).letters(), rng.complex_normal());
  return x;
}

}  // namespace

TEST_CASE("the identity column holds the coefficients") {
  StableRng rng(2);
  auto q = MultiParameter::uniform(oracle::named("pentagon"), 2.0);
  const auto x = random_element(q, 3, 6, rng);
  const auto m = gns::matrix_of(x, 2);
  for (std::size_t r = 0; r < m.rows(); ++r) CHECK(m.dense()(static_cast<Eigen::Index>(r), 0) == x.coeff(m.row_word(r)));
}

TEST_CASE("clipped and exact constructions agree") {
  StableRng rng(3);
  for (const char* name : {"square", "pentagon"}) {
    auto q = MultiParameter(oracle::named(name), std::vector<double>(oracle::named(name)->rank(), 0.3));
    const auto x = random_element(q, 2, 5, rng);
    const auto b = coxeter::ball(q.graph_ptr(), 3);
    const auto exact = gns::compress_ball(gns::matrix_of(x, 3), 3, 3);
    const auto clipped = gns::matrix_of(x, b, b);
    CHECK(gns::max_abs_difference(exact, clipped) <= 1e-13);
  }
}

TEST_CASE("representation is multiplicative and star-preserving") {
  StableRng rng(4);
  for (double qv : {0.25, 4.0}) {
    auto q = MultiParameter::uniform(oracle::named("square"), qv);
    const auto x = random_element(q, 2, 4, rng);
    const auto y = random_element(q, 2, 4, rng);
    const std::size_t N = 2, dx = x.degree(), dy = y.degree();
    const auto mx = gns::matrix_of(x, coxeter::ball(q.graph_ptr(), N + dy), coxeter::ball(q.graph_ptr(), N + dx + dy));
    const auto my = gns::matrix_of(y, coxeter::ball(q.graph_ptr(), N), coxeter::ball(q.graph_ptr(), N + dy));
    const auto mxy = gns::matrix_of(hecke::multiply(x, y), coxeter::ball(q.graph_ptr(), N),
                                    coxeter::ball(q.graph_ptr(), N + dx + dy));
    const Eigen::MatrixXcd prod = mx.dense() * my.dense();
    CHECK((prod - mxy.dense()).cwiseAbs().maxCoeff() <= 1e-11);

    const auto b = coxeter::ball(q.graph_ptr(), 3);
    const Eigen::MatrixXcd a = gns::matrix_of(x, b, b).dense();
    const Eigen::MatrixXcd s = gns::matrix_of(hecke::star(x), b, b).dense();
    CHECK((a.adjoint() - s).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("operator norm against a dense SVD") {
  StableRng rng(5);
  for (const char* name : {"dihedral", "square", "pentagon"}) {
    auto q = MultiParameter::uniform(oracle::named(name), 2.5);
    for (int k = 0; k < 5; ++k) {
      const auto x = random_element(q, 3, 6, rng);
      const auto m = gns::matrix_of(x, 3);
      CHECK(gns::operator_norm(m) == doctest::Approx(oracle::dense_norm(m.dense())).epsilon(1e-10));
      const auto blk = gns::compress_block(m, 3, 2);
      CHECK(gns::operator_norm(blk) == doctest::Approx(oracle::dense_norm(blk.dense())).epsilon(1e-10));
    }
  }
  CHECK(gns::operator_norm(gns::SparseMatrix(3, 4)) == 0.0);
}

TEST_CASE("block compressions and validation") {
  auto q = MultiParameter::uniform(oracle::named("pentagon"), 2.0);
  const auto x = io::parse_element("s1s3", q);
  const auto m = gns::matrix_of(x, 2);
  CHECK_THROWS_AS(gns::compress_block(m, 5, 0), ValidationError);
  CHECK_THROWS_AS(gns::compress_block(m, 0, 3), ValidationError);
  // T_w maps length j into lengths j - |w| .. j + |w| with matching parity here
  CHECK(gns::operator_norm(gns::compress_block(m, 2, 0)) == doctest::Approx(1.0));
  CHECK(gns::operator_norm(gns::compress_block(m, 1, 0)) == 0.0);
  const auto wide = gns::widen_codomain(m, coxeter::ball(q.graph_ptr(), 6));
  CHECK(gns::operator_norm(wide) == doctest::Approx(gns::operator_norm(m)));
  CHECK_THROWS_AS(gns::max_abs_difference(m, wide), ValidationError);
}

TEST_CASE("Dirac commutator") {
  StableRng rng(6);
  auto q = MultiParameter::uniform(oracle::named("square"), 3.0);
  const auto x = random_element(q, 3, 5, rng);
  const auto d = gns::dirac_commutator_matrix(x, 3);
  // Column of e is [D, x] delta_e = sum |w| x_w delta_w.
  const Eigen::VectorXcd col = d.dense().col(0);
  CHECK(col.norm() == doctest::Approx(gns::commutator_l2(x)).epsilon(1e-12));
  // Entry (v, u) of [D, x] is (|v| - |u|) x_{v,u}.
  const auto m = gns::matrix_of(x, 3);
  const Eigen::MatrixXcd md = m.dense(), dd = d.dense();
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) {
      const double w = static_cast<double>(m.row_word(r).length()) - static_cast<double>(m.col_word(c).length());
      CHECK(std::abs(dd(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) -
                     w * md(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))) <= 1e-12);
    }
  CHECK(gns::lip_lower_bound(x, 2) <= gns::lip_lower_bound(x, 3) + 1e-12);
  CHECK(gns::lip_lower_bound(HeckeElement::one(q), 3) == 0.0);
}

TEST_CASE("matrix CSV dump") {
  auto q = MultiParameter::uniform(oracle::named("dihedral"), 4.0);
  const auto m = gns::matrix_of(io::parse_element("s", q), 1);
  std::ostringstream out;
  gns::write_csv(out, m);
  const std::string text = out.str();
  CHECK(text.rfind("row\\col,e,s,t\n", 0) == 0);
  CHECK(text.find("\ns,1,1.5,0\n") != std::string::npos);
}
