#pragma once

// Schur multipliers m_kappa with symbol kappa^{|v u^-1|}, the estimates built
// on them, and the q -> 1 approximation experiment.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rahecke/metrics.hpp"

namespace rahecke::schur {

using coxeter::BallBasis;
using gns::TruncatedOperator;
using hecke::HeckeElement;
using hecke::MultiParameter;

/// Entrywise kappa^{|v u^-1|} on any window; the bimodule property makes
/// this the compression of m_kappa.
TruncatedOperator schur_weights(double kappa, const TruncatedOperator& op);
/// m_kappa on a square compression (equal row and column windows).
TruncatedOperator schur_map(double kappa, const TruncatedOperator& op);

struct GramResult {
  double min_eigenvalue = 0.0;
  std::size_t dimension = 0;
  bool passed = false;  // min_eigenvalue >= -1e-10
};
GramResult gram_check(double kappa, const BallBasis& basis);

struct IntertwineResult {
  double max_deviation = 0.0;  // [D, m(x)] against m([D, x])
  double lhs_norm = 0.0;       // ||[D, m(x)]||
  double rhs_norm = 0.0;       // ||[D, x]||
  bool norm_inequality = false;
};
IntertwineResult commutator_intertwine_check(const HeckeElement& x, double kappa, std::size_t N);

/// max over cliques of |prod p_t(q) - prod p_t(q')|.
double c_qq(const MultiParameter& q, const MultiParameter& q2);

struct BandedResult {
  double lhs = 0.0, rhs = 0.0;
  bool holds = false;
};
/// ||P_i m_kappa(x - x^(q')) P_j|| against kappa^|i-j| K C_{q,q'} ||x delta_e||.
BandedResult banded_difference_check(const HeckeElement& x, const MultiParameter& q2, double kappa,
                                     std::size_t i, std::size_t j, std::size_t N, double k_emp);

struct MagnitudeResult {
  double norm_gap = 0.0;        // ||m_kappa(x - x^(q'))||
  double commutator_gap = 0.0;  // ||[D, m_kappa(x - x^(q'))]||
  double lip = 0.0;
  double norm_gap_ratio = 0.0;
  double commutator_gap_ratio = 0.0;
};
MagnitudeResult magnitude_check(const HeckeElement& x, const MultiParameter& q2, double kappa,
                                std::size_t N);

struct ConvergenceConfig {
  std::vector<double> q_grid;
  double kappa = 0.5;
  std::size_t support = 2;
  std::size_t radius = 4;
  std::size_t samples = 20;
  std::uint64_t seed = 11;
  std::optional<double> k_emp;  // scanned when absent
};

/// All distances are ball-compressed norms (truncated surrogates).
struct ConvergenceRow {
  double q = 1.0;
  double kappa = 0.5;
  double c_q1 = 0.0;
  double f_q1 = 0.0;
  double gap_dir1 = 0.0;        // sup ||x - y^(q)||
  double gap_dir2 = 0.0;        // sup ||y^(q) - y^(1)||, the q-dependent part
  double gap_dir2_total = 0.0;  // sup ||x - y^(1)||
  double smoothing_dir2 = 0.0;  // sup ||xbar - m_kappa(xbar)||
  std::size_t samples = 0;
  std::size_t radius = 0;
};

struct ConvergenceReport {
  ConvergenceConfig config;
  double k_emp = 0.0;
  std::string k_source;
  std::vector<ConvergenceRow> rows;
};

ConvergenceReport convergence_experiment(const coxeter::GraphPtr& graph, const ConvergenceConfig& config);

/// Self-adjoint element with tau = 0 and complex Gaussian coefficients on
/// the words of length 1..support.
HeckeElement random_self_adjoint(const MultiParameter& q, std::size_t support, StableRng& rng);

}  // namespace rahecke::schur
