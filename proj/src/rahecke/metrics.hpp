#pragma once

// Experiments around the block inequality ||P_i x P_j|| <= K C_q ||x delta_e||.

#include <cstdint>
#include <string>
#include <vector>

#include "rahecke/gns.hpp"

namespace rahecke::metrics {

using coxeter::NormalWord;
using hecke::HeckeElement;
using hecke::MultiParameter;

/// max over cliques (the empty one included) of prod |p_t(q)|; always >= 1.
double c_q(const MultiParameter& q);

/// ||P_i x P_j|| / ||x delta_e|| with x acting on ball(N).
double haagerup_ratio(const HeckeElement& x, std::size_t i, std::size_t j, std::size_t N);

/// Block norms of one element for every feasible (i, j), divided by ||x delta_e||.
struct BlockRatio {
  std::size_t i = 0, j = 0;
  double ratio = 0.0;
};
std::vector<BlockRatio> block_ratios(const HeckeElement& x, std::size_t N, std::size_t band);

struct HaagerupSample {
  std::string kind;  // random, basis:<word>, uniform, counterexample:<m>
  std::size_t n = 0;
  double max_ratio = 0.0;
  std::size_t best_i = 0, best_j = 0;
};

struct HaagerupCell {
  std::size_t n = 0, i = 0, j = 0;
  double max_ratio = 0.0;
};

struct HaagerupReport {
  std::string graph_label, graph_hash;
  bool hyperbolic = true;
  std::vector<double> q;
  std::size_t n_max = 0, radius = 0, samples = 0;
  std::uint64_t seed = 0;
  double c_q = 1.0;
  std::vector<HaagerupSample> records;
  std::vector<HaagerupCell> cells;
  std::vector<double> max_ratio_by_n;  // index n; entry 0 unused unless n_max >= 0
  std::vector<double> k_by_n;
  double max_ratio = 0.0;
  double k_emp = 0.0;
};

/// Homogeneous candidates of each degree 1..n_max: seeded random unit
/// vectors, every T_w on the sphere, their uniform sum, and the square
/// family when the graph has an induced square.
HaagerupReport haagerup_scan(const MultiParameter& q, std::size_t n_max, std::size_t N,
                             std::size_t samples, std::uint64_t seed);

/// x_n = (1/n) sum_{i=1..n} T_{(uv)^i (st)^{n-i}} for the induced square (u, s, v, t).
HeckeElement counterexample_element(std::size_t n, const MultiParameter& q);
/// xi_n = (2n)^{-1/2} sum_{j=1..2n} delta_{(uv)^j (st)^{2n-j}}, as an element acting on delta_e.
HeckeElement counterexample_vector(std::size_t n, const MultiParameter& q);

struct CounterexampleResult {
  std::size_t n = 0;
  double x_norm = 0.0, xi_norm = 0.0, block_norm = 0.0, block_norm_sq = 0.0;
  double ratio = 0.0, bound = 0.0;
  bool passed = false;
};

/// Evaluates P_{6n} x_n xi_n by direct Hecke action on the support of xi_n.
CounterexampleResult verify_counterexample(std::size_t n, const MultiParameter& q);

/// Number of tuples (u, G1, v1, v2, G2, w1, w2) with x = v1 V(G1) v2,
/// y = (w1 w2)^-1 u, v1 <= u, w1 <= u and the five length equations.
std::uint64_t count_tuples(const NormalWord& x, const NormalWord& y, std::size_t i);

struct TupleScan {
  std::size_t max_x = 0, max_y = 0, max_i = 0;
  std::uint64_t seed = 0;
  std::uint64_t evaluated = 0;
  std::uint64_t bound = 0;
  std::vector<std::uint64_t> max_by_i;
  std::string argmax_x, argmax_y;
  std::size_t argmax_i = 0;
};

/// Exhaustive over |x| <= max_x, |y| <= max_y, i <= max_i. The seed only
/// shuffles the visiting order; the result does not depend on it.
TupleScan tuple_scan(const coxeter::GraphPtr& graph, std::size_t max_x, std::size_t max_y,
                     std::size_t max_i, std::uint64_t seed);

struct TailBand {
  double lhs_lower = 0.0;
  double rhs = 0.0;
  double lip = 0.0;
  bool holds = false;
};

/// Off-band part sum_{|i-j| > band} P_i x P_j against 2 pi L sqrt(sum_{|k| > band} k^-2).
TailBand tail_band_check(const HeckeElement& x, std::size_t band, std::size_t radius);

}  // namespace rahecke::metrics
