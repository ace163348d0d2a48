#pragma once

// Multi-parameter Iwahori-Hecke algebra of a right-angled system, stored as
// finitely supported coefficient maps over canonical words.

#include <map>
#include <string>
#include <vector>

#include "rahecke/coxeter.hpp"

namespace rahecke::hecke {

using coxeter::Generator;
using coxeter::GraphPtr;
using coxeter::Letters;
using coxeter::NormalWord;

/// Coefficients with modulus at or below this are dropped from the support.
inline constexpr double kPruneTolerance = 1e-12;

/// Positive parameter q_s per generator. Distinct generators of a
/// right-angled system are never conjugate (every m_st is 2 or infinite, so
/// no odd braid relation identifies them), hence any positive vector is a
/// valid parameter and no equality constraints are imposed.
class MultiParameter {
 public:
  MultiParameter(GraphPtr graph, std::vector<double> values);
  static MultiParameter uniform(GraphPtr graph, double q);

  const GraphPtr& graph_ptr() const { return graph_; }
  const coxeter::CoxeterGraph& graph() const { return *graph_; }
  const std::vector<double>& values() const { return values_; }
  double q(Generator s) const { return values_.at(s); }
  /// p_s(q) = (q_s - 1) / sqrt(q_s); exactly 0 at q_s = 1.
  double p(Generator s) const;
  /// q_w = product of q_s over the letters; independent of the expression.
  double q_word(const Letters& w) const;
  /// Product of p_t over a vertex set (1 for the empty set).
  double p_product(coxeter::VertexSet set) const;
  bool is_one() const;
  std::string str() const;

  bool operator==(const MultiParameter& o) const {
    return values_ == o.values_ && (graph_ == o.graph_ || *graph_ == *o.graph_);
  }

 private:
  GraphPtr graph_;
  std::vector<double> values_;
};

class HeckeElement {
 public:
  using Coeffs = std::map<Letters, Complex, coxeter::ShortLex>;

  /// The zero element.
  explicit HeckeElement(MultiParameter q) : q_(std::move(q)) {}
  static HeckeElement one(const MultiParameter& q) { return basis(q, Letters{}); }
  /// c * T_w for a canonical word w.
  static HeckeElement basis(const MultiParameter& q, const Letters& w, Complex c = 1.0);
  static HeckeElement basis(const MultiParameter& q, const NormalWord& w, Complex c = 1.0);

  const MultiParameter& param() const { return q_; }
  const coxeter::CoxeterGraph& graph() const { return q_.graph(); }
  const Coeffs& coeffs() const { return coeffs_; }
  Complex coeff(const Letters& w) const;
  Complex coeff(const NormalWord& w) const { return coeff(w.letters()); }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t support_size() const { return coeffs_.size(); }
  /// Largest word length in the support; 0 for the zero element.
  std::size_t degree() const;

  /// Adds c to the coefficient of the canonical word w, pruning near-zeros.
  void add(const Letters& w, Complex c);

  HeckeElement& operator+=(const HeckeElement& o);
  HeckeElement& operator-=(const HeckeElement& o);
  HeckeElement& operator*=(Complex c);
  friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
  friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) { return a -= b; }
  friend HeckeElement operator*(Complex c, HeckeElement a) { return a *= c; }

  std::string str() const;

 private:
  MultiParameter q_;
  Coeffs coeffs_;
};

void require_same_param(const HeckeElement& a, const HeckeElement& b);

HeckeElement left_mul_generator(Generator s, const HeckeElement& x);
HeckeElement multiply(const HeckeElement& x, const HeckeElement& y);
HeckeElement star(const HeckeElement& x);
Complex trace(const HeckeElement& x);
double l2_norm(const HeckeElement& x);
/// Component of length exactly n.
HeckeElement chi(std::size_t n, const HeckeElement& x);
/// Components of length at most n.
HeckeElement chi_le(std::size_t n, const HeckeElement& x);
/// Same coefficients over another parameter of the same graph.
HeckeElement reparametrize(const HeckeElement& x, const MultiParameter& q);
/// x - tau(x) 1.
HeckeElement mean_zero_part(const HeckeElement& x);
/// Maximum coefficientwise modulus of x - y.
double max_coeff_difference(const HeckeElement& x, const HeckeElement& y);

/// Expansion of T_w T_u as (word, coefficient) pairs with duplicates merged.
std::vector<std::pair<Letters, Complex>> basis_product(const MultiParameter& q, const Letters& w,
                                                       const Letters& u);

}  // namespace rahecke::hecke
