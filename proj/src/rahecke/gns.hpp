#pragma once

// Truncated GNS picture: Hecke elements acting on finite balls of l2(W).

#include <iosfwd>
#include <utility>

#include <Eigen/Sparse>

#include "rahecke/hecke.hpp"

namespace rahecke::gns {

using coxeter::BallPtr;
using hecke::HeckeElement;

using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor, std::int64_t>;

/// Matrix between two ball bases. Rows and columns may be restricted to a
/// window of word lengths; since balls are sorted by length a window is a
/// contiguous index range. Storage is sparse because codomains grow
/// exponentially with the degree while each column holds few entries.
class TruncatedOperator {
 public:
  struct Window {
    std::size_t lo = 0;
    std::size_t hi = 0;  // inclusive
  };

  /// Full windows on both sides; matrix must be codomain.size() x domain.size().
  TruncatedOperator(BallPtr domain, BallPtr codomain, SparseMatrix matrix);
  TruncatedOperator(BallPtr domain, BallPtr codomain, Window rows, Window cols, SparseMatrix matrix);

  const BallPtr& domain() const { return domain_; }
  const BallPtr& codomain() const { return codomain_; }
  Window row_window() const { return rows_; }
  Window col_window() const { return cols_; }
  std::size_t row_offset() const { return codomain_->sphere(rows_.lo).first; }
  std::size_t col_offset() const { return domain_->sphere(cols_.lo).first; }
  std::size_t rows() const { return static_cast<std::size_t>(matrix_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(matrix_.cols()); }
  const coxeter::NormalWord& row_word(std::size_t r) const { return codomain_->word(row_offset() + r); }
  const coxeter::NormalWord& col_word(std::size_t c) const { return domain_->word(col_offset() + c); }

  const SparseMatrix& matrix() const { return matrix_; }
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix_); }
  /// <x delta_u, delta_v>; zero outside the windows.
  Complex entry(const coxeter::NormalWord& v, const coxeter::NormalWord& u) const;

 private:
  BallPtr domain_;
  BallPtr codomain_;
  Window rows_;
  Window cols_;
  SparseMatrix matrix_;
};

/// Domain ball(N), codomain ball(N + degree). Every column is exact.
TruncatedOperator matrix_of(const HeckeElement& x, std::size_t N);
/// Arbitrary codomain; entries outside it are dropped.
TruncatedOperator matrix_of(const HeckeElement& x, const BallPtr& domain, const BallPtr& codomain);

/// Rows of length i, columns of length j.
TruncatedOperator compress_block(const TruncatedOperator& op, std::size_t i, std::size_t j);
/// Rows of length in [row_lo, row_hi], columns in [col_lo, col_hi].
TruncatedOperator compress_window(const TruncatedOperator& op, TruncatedOperator::Window rows,
                                  TruncatedOperator::Window cols);
/// Leading block ball(row_radius) x ball(col_radius).
TruncatedOperator compress_ball(const TruncatedOperator& op, std::size_t row_radius,
                                std::size_t col_radius);
/// Same entries over a larger codomain ball (zero padding).
TruncatedOperator widen_codomain(const TruncatedOperator& op, const BallPtr& codomain);

/// Largest singular value; via the Gram matrix on the smaller side.
double operator_norm(const SparseMatrix& m);
double operator_norm(const TruncatedOperator& op);

/// Multiplies entry (v,u) by |v| - |u|.
TruncatedOperator dirac_weights(const TruncatedOperator& op);
TruncatedOperator dirac_commutator_matrix(const HeckeElement& x, std::size_t N);
/// sqrt(sum |w|^2 |x(w)|^2) = ||[D, x] delta_e||.
double commutator_l2(const HeckeElement& x);
/// Norm of the commutator compressed to ball(N) on both sides. A lower
/// bound for the Lip seminorm, nondecreasing in N.
double lip_lower_bound(const HeckeElement& x, std::size_t N);

/// Maximum entrywise modulus of a - b; operators must share windows.
double max_abs_difference(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator operator+(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator scaled(const TruncatedOperator& a, Complex c);

/// CSV with a header row of column words and the row word leading each line.
void write_csv(std::ostream& out, const TruncatedOperator& op);

}  // namespace rahecke::gns
