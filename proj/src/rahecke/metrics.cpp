#include "rahecke/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace rahecke::metrics {

using coxeter::Generator;
using coxeter::Letters;
using coxeter::VertexSet;

double c_q(const MultiParameter& q) {
  double best = 0.0;
  for (VertexSet clique : coxeter::cliques(q.graph())) best = std::max(best, std::abs(q.p_product(clique)));
  return best;
}

double haagerup_ratio(const HeckeElement& x, std::size_t i, std::size_t j, std::size_t N) {
  const double norm = hecke::l2_norm(x);
  if (norm == 0.0) throw ValidationError("haagerup ratio of the zero element");
  if (j > N || i > N + x.degree())
    throw ValidationError("block (" + std::to_string(i) + "," + std::to_string(j) +
                          ") is not inside the exact compression");
  return gns::operator_norm(gns::compress_block(gns::matrix_of(x, N), i, j)) / norm;
}

std::vector<BlockRatio> block_ratios(const HeckeElement& x, std::size_t N, std::size_t band) {
  const double norm = hecke::l2_norm(x);
  if (norm == 0.0) throw ValidationError("haagerup ratio of the zero element");
  const auto op = gns::matrix_of(x, N);
  const std::size_t top = N + x.degree();
  std::vector<BlockRatio> out;
  for (std::size_t j = 0; j <= N; ++j)
    for (std::size_t i = j > band ? j - band : 0; i <= std::min(top, j + band); ++i)
      out.push_back({i, j, gns::operator_norm(gns::compress_block(op, i, j)) / norm});
  return out;
}

namespace {

std::optional<std::array<Generator, 4>> square_of(const coxeter::CoxeterGraph& g) {
  return coxeter::graph_analysis(g).square_witness;
}

// (uv)^a (st)^b in canonical form, for the witness (u, s, v, t).
Letters square_word(const coxeter::CoxeterGraph& g, const std::array<Generator, 4>& sq,
                    std::size_t a, std::size_t b) {
  const Generator u = sq[0], s = sq[1], v = sq[2], t = sq[3];
  Letters letters;
  for (std::size_t k = 0; k < a; ++k) letters.insert(letters.end(), {u, v});
  for (std::size_t k = 0; k < b; ++k) letters.insert(letters.end(), {s, t});
  return coxeter::normalize_letters(g, letters);
}

HeckeElement random_homogeneous(const MultiParameter& q, const coxeter::BallBasis& b, std::size_t n,
                                StableRng& rng) {
  HeckeElement x(q);
  const auto [lo, hi] = b.sphere(n);
  std::vector<Complex> c(hi - lo);
  double sum = 0.0;
  for (auto& v : c) {
    v = rng.complex_normal();
    sum += std::norm(v);
  }
  const double scale = 1.0 / std::sqrt(sum);
  for (std::size_t k = lo; k < hi; ++k) x.add(b.word(k).letters(), c[k - lo] * scale);
  return x;
}

constexpr std::size_t kMaxBasisCandidates = 64;

}  // namespace

HaagerupReport haagerup_scan(const MultiParameter& q, std::size_t n_max, std::size_t N,
                             std::size_t samples, std::uint64_t seed) {
  const auto& g = q.graph();
  HaagerupReport rep;
  rep.graph_label = g.label();
  rep.graph_hash = g.content_hash();
  const auto analysis = coxeter::graph_analysis(g);
  rep.hyperbolic = analysis.hyperbolic;
  rep.q = q.values();
  rep.n_max = n_max;
  rep.radius = N;
  rep.samples = samples;
  rep.seed = seed;
  rep.c_q = c_q(q);
  rep.max_ratio_by_n.assign(n_max + 1, 0.0);
  rep.k_by_n.assign(n_max + 1, 0.0);
  const auto words = coxeter::ball(q.graph_ptr(), n_max);
  StableRng rng(seed);
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::vector<std::pair<std::string, HeckeElement>> candidates;
    for (std::size_t k = 0; k < samples; ++k)
      candidates.emplace_back("random", random_homogeneous(q, *words, n, rng));
    const auto [lo, hi] = words->sphere(n);
    HeckeElement uniform(q);
    for (std::size_t k = lo; k < hi; ++k) {
      uniform.add(words->word(k).letters(), 1.0);
      if (k - lo < kMaxBasisCandidates)
        candidates.emplace_back("basis:" + words->word(k).str(),
                                HeckeElement::basis(q, words->word(k)));
    }
    candidates.emplace_back("uniform", uniform);
    if (analysis.square_witness && n % 2 == 0)
      candidates.emplace_back("counterexample:" + std::to_string(n / 2),
                              counterexample_element(n / 2, q));
    std::vector<std::vector<BlockRatio>> results(candidates.size());
    parallel_for(candidates.size(), [&](std::size_t c) {
      results[c] = block_ratios(candidates[c].second, N, n);
    });
    std::vector<HaagerupCell> cells;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      HaagerupSample rec{candidates[c].first, n, 0.0, 0, 0};
      for (const auto& br : results[c]) {
        if (br.ratio > rec.max_ratio) {
          rec.max_ratio = br.ratio;
          rec.best_i = br.i;
          rec.best_j = br.j;
        }
        auto it = std::find_if(cells.begin(), cells.end(),
                               [&](const HaagerupCell& x) { return x.i == br.i && x.j == br.j; });
        if (it == cells.end())
          cells.push_back({n, br.i, br.j, br.ratio});
        else
          it->max_ratio = std::max(it->max_ratio, br.ratio);
      }
      rep.max_ratio_by_n[n] = std::max(rep.max_ratio_by_n[n], rec.max_ratio);
      rep.records.push_back(rec);
    }
    rep.cells.insert(rep.cells.end(), cells.begin(), cells.end());
    rep.k_by_n[n] = rep.max_ratio_by_n[n] / rep.c_q;
    rep.max_ratio = std::max(rep.max_ratio, rep.max_ratio_by_n[n]);
  }
  rep.k_emp = rep.max_ratio / rep.c_q;
  return rep;
}

HeckeElement counterexample_element(std::size_t n, const MultiParameter& q) {
  if (n == 0) throw ValidationError("counterexample needs n >= 1");
  const auto sq = square_of(q.graph());
  if (!sq) throw ValidationError("graph has no induced square");
  HeckeElement x(q);
  for (std::size_t i = 1; i <= n; ++i)
    x.add(square_word(q.graph(), *sq, i, n - i), 1.0 / static_cast<double>(n));
  return x;
}

HeckeElement counterexample_vector(std::size_t n, const MultiParameter& q) {
  if (n == 0) throw ValidationError("counterexample needs n >= 1");
  const auto sq = square_of(q.graph());
  if (!sq) throw ValidationError("graph has no induced square");
  HeckeElement xi(q);
  const double c = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
  for (std::size_t j = 1; j <= 2 * n; ++j) xi.add(square_word(q.graph(), *sq, j, 2 * n - j), c);
  return xi;
}

CounterexampleResult verify_counterexample(std::size_t n, const MultiParameter& q) {
  const HeckeElement x = counterexample_element(n, q);
  const HeckeElement xi = counterexample_vector(n, q);
  CounterexampleResult r;
  r.n = n;
  r.x_norm = hecke::l2_norm(x);
  r.xi_norm = hecke::l2_norm(xi);
  // x xi delta_e = (x * xi) delta_e, so the product's coefficients are the vector.
  const HeckeElement block = hecke::chi(6 * n, hecke::multiply(x, xi));
  double sq = 0.0;
  for (const auto& [w, c] : block.coeffs()) sq += std::norm(c);
  r.block_norm_sq = sq;
  r.block_norm = std::sqrt(sq);
  r.ratio = r.block_norm / (r.x_norm * r.xi_norm);
  r.bound = std::sqrt(static_cast<double>(n) / 2.0);
  r.passed = r.ratio >= r.bound;
  return r;
}

// --- tuple counting --------------------------------------------------------

namespace {

std::set<Letters> prefixes(const coxeter::CoxeterGraph& g, const Letters& u) {
  std::set<Letters> out{Letters{}};
  for (Generator s : coxeter::left_descents(g, u).members()) {
    const Letters su = coxeter::left_multiply(g, s, u);
    for (const auto& p : prefixes(g, su)) out.insert(coxeter::left_multiply(g, s, p));
  }
  return out;
}

// Prefixes of u bucketed by length.
std::vector<std::vector<Letters>> prefixes_by_length(const coxeter::CoxeterGraph& g, const Letters& u) {
  std::vector<std::vector<Letters>> out(u.size() + 1);
  for (auto& p : prefixes(g, u)) out[p.size()].push_back(p);
  return out;
}

Letters concat(std::initializer_list<const Letters*> parts) {
  Letters out;
  for (const Letters* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

// sum over (G1, v1) for fixed u; y enters only through its length.
std::uint64_t count_v(const coxeter::CoxeterGraph& g, const std::vector<VertexSet>& cliques,
                      const Letters& x, std::size_t ly, std::size_t i,
                      const std::vector<std::vector<Letters>>& pre) {
  std::uint64_t total = 0;
  const auto lx = static_cast<long>(x.size());
  for (VertexSet c : cliques) {
    const long base = static_cast<long>(i) + lx - static_cast<long>(ly);
    const long num1 = base - c.size();
    if (num1 < 0 || num1 % 2 != 0) continue;
    const long len_v1 = num1 / 2;
    const long len_v2 = lx - (base + c.size()) / 2;
    if (len_v2 < 0 || len_v1 >= static_cast<long>(pre.size())) continue;
    const Letters vg = coxeter::canonical_order(g, c.members());
    for (const auto& v1 : pre[static_cast<std::size_t>(len_v1)]) {
      // v2 = (v1 V(G1))^-1 x; V(G1) is an involution.
      const Letters inv_v1 = coxeter::inverse_letters(v1);
      const Letters v2 = coxeter::normalize_letters(g, concat({&vg, &inv_v1, &x}));
      if (static_cast<long>(v2.size()) == len_v2) ++total;
    }
  }
  return total;
}

// sum over (G2, w1) for fixed u; x enters only through its length.
std::uint64_t count_w(const coxeter::CoxeterGraph& g, const std::vector<VertexSet>& cliques,
                      std::size_t lx_u, const Letters& y, const Letters& u,
                      const std::vector<std::vector<Letters>>& pre) {
  std::uint64_t total = 0;
  const auto lx = static_cast<long>(lx_u);
  const long base = static_cast<long>(u.size()) + lx - static_cast<long>(y.size());
  const Letters inv_y = coxeter::inverse_letters(y);
  for (VertexSet c : cliques) {
    const long num1 = base - c.size();
    if (num1 < 0 || num1 % 2 != 0) continue;
    const long len_w1 = num1 / 2;
    const long len_w2 = lx - (base + c.size()) / 2;
    if (len_w2 < 0 || len_w1 >= static_cast<long>(pre.size())) continue;
    for (const auto& w1 : pre[static_cast<std::size_t>(len_w1)]) {
      // w2 = w1^-1 u y^-1.
      const Letters inv_w1 = coxeter::inverse_letters(w1);
      const Letters w2 = coxeter::normalize_letters(g, concat({&inv_w1, &u, &inv_y}));
      if (static_cast<long>(w2.size()) == len_w2) ++total;
    }
  }
  return total;
}

}  // namespace

std::uint64_t count_tuples(const NormalWord& x, const NormalWord& y, std::size_t i) {
  coxeter::require_same_graph(x.graph(), y.graph());
  const auto& g = x.graph();
  const auto cliques = coxeter::cliques(g);
  const auto graph = std::shared_ptr<const coxeter::CoxeterGraph>(&g, [](auto*) {});
  const auto b = coxeter::BallBasis(graph, i);
  const auto [lo, hi] = b.sphere(i);
  std::uint64_t total = 0;
  for (std::size_t k = lo; k < hi; ++k) {
    const Letters& u = b.word(k).letters();
    const auto pre = prefixes_by_length(g, u);
    const auto a = count_v(g, cliques, x.letters(), y.length(), i, pre);
    if (a == 0) continue;
    total += a * count_w(g, cliques, x.length(), y.letters(), u, pre);
  }
  return total;
}

TupleScan tuple_scan(const coxeter::GraphPtr& graph, std::size_t max_x, std::size_t max_y,
                     std::size_t max_i, std::uint64_t seed) {
  const auto& g = *graph;
  const auto cliques = coxeter::cliques(g);
  const auto bu = coxeter::ball(graph, max_i);
  const auto bx = coxeter::ball(graph, max_x);
  const auto by = coxeter::ball(graph, max_y);
  const std::size_t nu = bu->size();
  std::vector<std::vector<std::vector<Letters>>> pre(nu);
  for (std::size_t k = 0; k < nu; ++k) pre[k] = prefixes_by_length(g, bu->word(k).letters());

  // A[x][|y|][u] and B[|x|][y][u] factor the count.
  std::vector<std::uint64_t> A(bx->size() * (max_y + 1) * nu), B((max_x + 1) * by->size() * nu);
  parallel_for(bx->size(), [&](std::size_t xi) {
    for (std::size_t ly = 0; ly <= max_y; ++ly)
      for (std::size_t k = 0; k < nu; ++k)
        A[(xi * (max_y + 1) + ly) * nu + k] =
            count_v(g, cliques, bx->word(xi).letters(), ly, bu->length_of(k), pre[k]);
  });
  parallel_for(by->size(), [&](std::size_t yi) {
    for (std::size_t lx = 0; lx <= max_x; ++lx)
      for (std::size_t k = 0; k < nu; ++k)
        B[(lx * by->size() + yi) * nu + k] =
            count_w(g, cliques, lx, by->word(yi).letters(), bu->word(k).letters(), pre[k]);
  });

  TupleScan scan;
  scan.max_x = max_x;
  scan.max_y = max_y;
  scan.max_i = max_i;
  scan.seed = seed;
  scan.max_by_i.assign(max_i + 1, 0);
  std::vector<std::array<std::size_t, 3>> order;
  for (std::size_t xi = 0; xi < bx->size(); ++xi)
    for (std::size_t yi = 0; yi < by->size(); ++yi)
      for (std::size_t i = 0; i <= max_i; ++i) order.push_back({xi, yi, i});
  StableRng rng(seed);
  for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[rng.below(k)]);
  bool have = false;
  std::array<std::size_t, 3> best{};
  for (const auto& [xi, yi, i] : order) {
    const std::size_t lx = bx->length_of(xi), ly = by->length_of(yi);
    const auto [lo, hi] = bu->sphere(i);
    std::uint64_t count = 0;
    for (std::size_t k = lo; k < hi; ++k)
      count += A[(xi * (max_y + 1) + ly) * nu + k] * B[(lx * by->size() + yi) * nu + k];
    ++scan.evaluated;
    scan.max_by_i[i] = std::max(scan.max_by_i[i], count);
    // Ties resolve to the smallest (x, y, i) so the argmax is order-free.
    const std::array<std::size_t, 3> key{xi, yi, i};
    if (!have || count > scan.bound || (count == scan.bound && key < best)) {
      have = true;
      scan.bound = count;
      best = key;
    }
  }
  scan.argmax_x = bx->word(best[0]).str();
  scan.argmax_y = by->word(best[1]).str();
  scan.argmax_i = best[2];
  return scan;
}

TailBand tail_band_check(const HeckeElement& x, std::size_t band, std::size_t radius) {
  const auto full = gns::compress_ball(gns::matrix_of(x, radius), radius, radius);
  gns::SparseMatrix m = full.matrix();
  const std::size_t r0 = full.row_offset(), c0 = full.col_offset();
  m.prune([&](std::int64_t r, std::int64_t c, const Complex&) {
    const auto lv = static_cast<long>(full.codomain()->length_of(r0 + static_cast<std::size_t>(r)));
    const auto lu = static_cast<long>(full.domain()->length_of(c0 + static_cast<std::size_t>(c)));
    return std::abs(lv - lu) > static_cast<long>(band);
  });
  TailBand out;
  out.lhs_lower = gns::operator_norm(m);
  out.lip = gns::lip_lower_bound(x, radius);
  double head = 0.0;
  for (std::size_t k = 1; k <= band; ++k) head += 1.0 / static_cast<double>(k * k);
  const double tail = std::max(0.0, 2.0 * (std::numbers::pi * std::numbers::pi / 6.0 - head));
  out.rhs = 2.0 * std::numbers::pi * out.lip * std::sqrt(tail);
  out.holds = out.lhs_lower <= out.rhs;
  return out;
}

}  // namespace rahecke::metrics
