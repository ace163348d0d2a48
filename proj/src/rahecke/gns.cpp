#include "rahecke/gns.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <Eigen/Eigenvalues>

namespace rahecke::gns {

using coxeter::Letters;
using Triplet = Eigen::Triplet<Complex, std::int64_t>;

namespace {

TruncatedOperator::Window full_window(const BallPtr& b) { return {0, b->radius()}; }

std::size_t window_begin(const BallPtr& b, TruncatedOperator::Window w) { return b->sphere(w.lo).first; }
std::size_t window_end(const BallPtr& b, TruncatedOperator::Window w) { return b->sphere(w.hi).second; }

void check_window(const BallPtr& b, TruncatedOperator::Window w, const char* side) {
  if (w.lo > w.hi || w.hi > b->radius())
    throw ValidationError(std::string(side) + " window [" + std::to_string(w.lo) + "," +
                          std::to_string(w.hi) + "] outside ball of radius " +
                          std::to_string(b->radius()));
}

SparseMatrix from_triplets(std::size_t rows, std::size_t cols, const std::vector<Triplet>& t) {
  SparseMatrix m(static_cast<std::int64_t>(rows), static_cast<std::int64_t>(cols));
  m.setFromTriplets(t.begin(), t.end());
  m.prune([](std::int64_t, std::int64_t, const Complex& v) { return v != Complex{}; });
  return m;
}

std::string format_entry(Complex c) {
  if (c.imag() == 0.0) return format12(c.real());
  return format12(c.real()) + (c.imag() < 0 ? "-" : "+") + format12(std::abs(c.imag())) + "i";
}

}  // namespace

TruncatedOperator::TruncatedOperator(BallPtr domain, BallPtr codomain, SparseMatrix matrix)
    : TruncatedOperator(domain, codomain, full_window(codomain), full_window(domain),
                        std::move(matrix)) {}

TruncatedOperator::TruncatedOperator(BallPtr domain, BallPtr codomain, Window rows, Window cols,
                                     SparseMatrix matrix)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      rows_(rows),
      cols_(cols),
      matrix_(std::move(matrix)) {
  coxeter::require_same_graph(domain_->graph(), codomain_->graph());
  check_window(codomain_, rows_, "row");
  check_window(domain_, cols_, "column");
  const auto r = window_end(codomain_, rows_) - window_begin(codomain_, rows_);
  const auto c = window_end(domain_, cols_) - window_begin(domain_, cols_);
  if (static_cast<std::size_t>(matrix_.rows()) != r || static_cast<std::size_t>(matrix_.cols()) != c)
    throw ValidationError("matrix shape does not match the basis windows");
}

Complex TruncatedOperator::entry(const coxeter::NormalWord& v, const coxeter::NormalWord& u) const {
  const auto r = codomain_->find(v.letters());
  const auto c = domain_->find(u.letters());
  if (!r || !c) return {};
  if (v.length() < rows_.lo || v.length() > rows_.hi) return {};
  if (u.length() < cols_.lo || u.length() > cols_.hi) return {};
  return matrix_.coeff(static_cast<std::int64_t>(*r - row_offset()),
                       static_cast<std::int64_t>(*c - col_offset()));
}

TruncatedOperator matrix_of(const HeckeElement& x, std::size_t N) {
  auto domain = coxeter::ball(x.param().graph_ptr(), N);
  auto codomain = coxeter::ball(x.param().graph_ptr(), N + x.degree());
  return matrix_of(x, domain, codomain);
}

TruncatedOperator matrix_of(const HeckeElement& x, const BallPtr& domain, const BallPtr& codomain) {
  coxeter::require_same_graph(x.graph(), domain->graph());
  coxeter::require_same_graph(x.graph(), codomain->graph());
  const auto& q = x.param();
  const std::vector<std::pair<Letters, Complex>> terms(x.coeffs().begin(), x.coeffs().end());
  // With room for every product the ball's neighbour table walks each
  // expansion; otherwise products are formed on words and clipped.
  const bool exact = codomain->radius() >= domain->radius() + x.degree();
  std::vector<std::vector<Triplet>> columns(domain->size());
  parallel_for(domain->size(), [&](std::size_t col) {
    auto& out = columns[col];
    if (exact) {
      std::vector<std::pair<std::size_t, Complex>> current, next;
      for (const auto& [w, a] : terms) {
        current.assign(1, {col, a});
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
          const double p = q.p(*it);
          next.clear();
          for (const auto& [i, c] : current) {
            const auto j = static_cast<std::size_t>(codomain->left_neighbour(*it, i));
            next.emplace_back(j, c);
            if (p != 0.0 && codomain->length_of(j) < codomain->length_of(i)) next.emplace_back(i, c * p);
          }
          std::swap(current, next);
        }
        for (const auto& [i, c] : current)
          out.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(col), c);
      }
    } else {
      const Letters& u = domain->word(col).letters();
      for (const auto& [w, a] : terms)
        for (const auto& [v, c] : hecke::basis_product(q, w, u))
          if (auto row = codomain->find(v))
            out.emplace_back(static_cast<std::int64_t>(*row), static_cast<std::int64_t>(col), a * c);
    }
  });
  std::vector<Triplet> all;
  for (auto& c : columns) all.insert(all.end(), c.begin(), c.end());
  return TruncatedOperator(domain, codomain, from_triplets(codomain->size(), domain->size(), all));
}

TruncatedOperator compress_window(const TruncatedOperator& op, TruncatedOperator::Window rows,
                                  TruncatedOperator::Window cols) {
  const auto& dom = op.domain();
  const auto& cod = op.codomain();
  check_window(cod, rows, "row");
  check_window(dom, cols, "column");
  const std::size_t r0 = window_begin(cod, rows), r1 = window_end(cod, rows);
  const std::size_t c0 = window_begin(dom, cols), c1 = window_end(dom, cols);
  const std::size_t old_r0 = op.row_offset(), old_c0 = op.col_offset();
  const std::size_t old_c1 = old_c0 + op.cols();
  std::vector<Triplet> t;
  for (std::size_t c = std::max(c0, old_c0); c < std::min(c1, old_c1); ++c)
    for (SparseMatrix::InnerIterator it(op.matrix(), static_cast<std::int64_t>(c - old_c0)); it; ++it) {
      const std::size_t r = old_r0 + static_cast<std::size_t>(it.row());
      if (r >= r0 && r < r1)
        t.emplace_back(static_cast<std::int64_t>(r - r0), static_cast<std::int64_t>(c - c0), it.value());
    }
  return TruncatedOperator(dom, cod, rows, cols, from_triplets(r1 - r0, c1 - c0, t));
}

TruncatedOperator compress_block(const TruncatedOperator& op, std::size_t i, std::size_t j) {
  if (i > op.codomain()->radius() || j > op.domain()->radius())
    throw ValidationError("block (" + std::to_string(i) + "," + std::to_string(j) +
                          ") outside the bases");
  return compress_window(op, {i, i}, {j, j});
}

TruncatedOperator compress_ball(const TruncatedOperator& op, std::size_t row_radius,
                                std::size_t col_radius) {
  return compress_window(op, {0, row_radius}, {0, col_radius});
}

TruncatedOperator widen_codomain(const TruncatedOperator& op, const BallPtr& codomain) {
  if (codomain->radius() < op.codomain()->radius())
    throw ValidationError("codomain can only grow");
  coxeter::require_same_graph(codomain->graph(), op.codomain()->graph());
  // Balls are nested prefixes, so indices carry over unchanged.
  const auto rows = op.row_window();
  std::vector<Triplet> t;
  for (std::int64_t c = 0; c < op.matrix().outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(op.matrix(), c); it; ++it)
      t.emplace_back(it.row(), c, it.value());
  TruncatedOperator::Window new_rows = rows;
  if (rows.hi == op.codomain()->radius()) new_rows.hi = codomain->radius();
  const std::size_t nr = window_end(codomain, new_rows) - window_begin(codomain, new_rows);
  return TruncatedOperator(op.domain(), codomain, new_rows, op.col_window(),
                           from_triplets(nr, op.cols(), t));
}

double operator_norm(const SparseMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0 || m.nonZeros() == 0) return 0.0;
  SparseMatrix gram = m.cols() <= m.rows() ? SparseMatrix(m.adjoint() * m)
                                           : SparseMatrix(m * m.adjoint());
  // The Gram matrix is usually block diagonal after a permutation; solving
  // each connected component separately keeps the dense solves small.
  const auto n = static_cast<std::size_t>(gram.rows());
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::int64_t c = 0; c < gram.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(gram, c); it; ++it) {
      const auto a = root(static_cast<std::size_t>(it.row()));
      const auto b = root(static_cast<std::size_t>(c));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::vector<std::size_t>> comps(n);
  for (std::size_t i = 0; i < n; ++i) comps[root(i)].push_back(i);
  double best = 0.0;
  std::vector<std::int64_t> local(n, -1);
  for (const auto& comp : comps) {
    if (comp.empty()) continue;
    if (comp.size() == 1) {
      best = std::max(best, gram.coeff(static_cast<std::int64_t>(comp[0]),
                                       static_cast<std::int64_t>(comp[0])).real());
      continue;
    }
    for (std::size_t k = 0; k < comp.size(); ++k) local[comp[k]] = static_cast<std::int64_t>(k);
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(comp.size()),
                                                    static_cast<Eigen::Index>(comp.size()));
    for (std::size_t k = 0; k < comp.size(); ++k)
      for (SparseMatrix::InnerIterator it(gram, static_cast<std::int64_t>(comp[k])); it; ++it)
        block(local[static_cast<std::size_t>(it.row())], static_cast<Eigen::Index>(k)) = it.value();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block, Eigen::EigenvaluesOnly);
    best = std::max(best, solver.eigenvalues().maxCoeff());
  }
  return std::sqrt(std::max(best, 0.0));
}

double operator_norm(const TruncatedOperator& op) { return operator_norm(op.matrix()); }

TruncatedOperator dirac_weights(const TruncatedOperator& op) {
  SparseMatrix m = op.matrix();
  const std::size_t r0 = op.row_offset(), c0 = op.col_offset();
  for (std::int64_t c = 0; c < m.outerSize(); ++c) {
    const auto lu = static_cast<double>(op.domain()->length_of(c0 + static_cast<std::size_t>(c)));
    for (SparseMatrix::InnerIterator it(m, c); it; ++it) {
      const auto lv = static_cast<double>(op.codomain()->length_of(r0 + static_cast<std::size_t>(it.row())));
      it.valueRef() *= (lv - lu);
    }
  }
  m.prune([](std::int64_t, std::int64_t, const Complex& v) { return v != Complex{}; });
  return TruncatedOperator(op.domain(), op.codomain(), op.row_window(), op.col_window(), std::move(m));
}

TruncatedOperator dirac_commutator_matrix(const HeckeElement& x, std::size_t N) {
  return dirac_weights(matrix_of(x, N));
}

double commutator_l2(const HeckeElement& x) {
  double sum = 0.0;
  for (const auto& [w, c] : x.coeffs()) sum += static_cast<double>(w.size() * w.size()) * std::norm(c);
  return std::sqrt(sum);
}

double lip_lower_bound(const HeckeElement& x, std::size_t N) {
  return operator_norm(compress_ball(dirac_commutator_matrix(x, N), N, N));
}

namespace {

void require_same_shape(const TruncatedOperator& a, const TruncatedOperator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.row_offset() != b.row_offset() ||
      a.col_offset() != b.col_offset())
    throw ValidationError("operators live on different windows");
  coxeter::require_same_graph(a.domain()->graph(), b.domain()->graph());
}

}  // namespace

double max_abs_difference(const TruncatedOperator& a, const TruncatedOperator& b) {
  require_same_shape(a, b);
  const SparseMatrix d = a.matrix() - b.matrix();
  double out = 0.0;
  for (std::int64_t c = 0; c < d.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(d, c); it; ++it) out = std::max(out, std::abs(it.value()));
  return out;
}

TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b) {
  require_same_shape(a, b);
  return TruncatedOperator(a.domain(), a.codomain(), a.row_window(), a.col_window(),
                           SparseMatrix(a.matrix() - b.matrix()));
}

TruncatedOperator operator+(const TruncatedOperator& a, const TruncatedOperator& b) {
  require_same_shape(a, b);
  return TruncatedOperator(a.domain(), a.codomain(), a.row_window(), a.col_window(),
                           SparseMatrix(a.matrix() + b.matrix()));
}

TruncatedOperator scaled(const TruncatedOperator& a, Complex c) {
  return TruncatedOperator(a.domain(), a.codomain(), a.row_window(), a.col_window(),
                           SparseMatrix(a.matrix() * c));
}

void write_csv(std::ostream& out, const TruncatedOperator& op) {
  const Eigen::MatrixXcd d = op.dense();
  out << "row\\col";
  for (std::size_t c = 0; c < op.cols(); ++c) out << "," << op.col_word(c).str();
  out << "\n";
  for (std::size_t r = 0; r < op.rows(); ++r) {
    out << op.row_word(r).str();
    for (std::size_t c = 0; c < op.cols(); ++c)
      out << "," << format_entry(d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
    out << "\n";
  }
}

}  // namespace rahecke::gns
