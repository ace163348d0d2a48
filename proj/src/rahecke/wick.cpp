#include "rahecke/wick.hpp"

#include <algorithm>

namespace rahecke::wick {

using Triplet = Eigen::Triplet<Complex, std::int64_t>;
using gns::SparseMatrix;

namespace {

SparseMatrix from_triplets(std::size_t rows, std::size_t cols, const std::vector<Triplet>& t) {
  SparseMatrix m(static_cast<std::int64_t>(rows), static_cast<std::int64_t>(cols));
  m.setFromTriplets(t.begin(), t.end());
  m.prune([](std::int64_t, std::int64_t, const Complex& v) { return v != Complex{}; });
  return m;
}

bool is_canonical(const coxeter::CoxeterGraph& g, const Letters& letters) {
  return coxeter::canonical_order(g, letters) == letters;
}

// The letters, all distinct and pairwise commuting, as a vertex set.
std::optional<VertexSet> clique_of(const coxeter::CoxeterGraph& g, const Letters& letters) {
  VertexSet set;
  for (Generator s : letters) {
    if (set.contains(s)) return std::nullopt;
    set = set | VertexSet::single(s);
  }
  if (!g.is_clique(set)) return std::nullopt;
  return set;
}

// sigma maps positions of the permuted expression to positions of the fixed
// one; equal letters keep their relative order.
std::vector<std::size_t> permutation_of(const Letters& fixed, const Letters& permuted) {
  std::vector<std::size_t> out;
  out.reserve(permuted.size());
  std::vector<std::size_t> used(coxeter::kMaxGenerators, 0);
  for (Generator s : permuted) {
    std::size_t seen = 0;
    for (std::size_t i = 0; i < fixed.size(); ++i)
      if (fixed[i] == s && seen++ == used[s]) {
        out.push_back(i);
        break;
      }
    ++used[s];
  }
  return out;
}

}  // namespace

TruncatedOperator q_projection(const NormalWord& u, const BallPtr& basis) {
  coxeter::require_same_graph(u.graph(), basis->graph());
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < basis->size(); ++i)
    if (coxeter::starts_with(u, basis->word(i)))
      t.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(i), 1.0);
  return TruncatedOperator(basis, basis, from_triplets(basis->size(), basis->size(), t));
}

TruncatedOperator ladder(Generator s, LadderKind kind, const MultiParameter& q, const BallPtr& basis) {
  coxeter::require_same_graph(q.graph(), basis->graph());
  if (s >= basis->graph().rank()) throw ValidationError("unknown generator index");
  const BallPtr codomain =
      kind == LadderKind::creation ? coxeter::ball(basis->graph_ptr(), basis->radius() + 1) : basis;
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < basis->size(); ++i) {
    const bool below = basis->left_descent(s, i);
    const auto col = static_cast<std::int64_t>(i);
    switch (kind) {
      case LadderKind::creation:
        if (!below) t.emplace_back(codomain->left_neighbour(s, i), col, 1.0);
        break;
      case LadderKind::annihilation:
        if (below) t.emplace_back(basis->left_neighbour(s, i), col, 1.0);
        break;
      case LadderKind::diagonal:
        if (below) t.emplace_back(col, col, q.p(s));
        break;
    }
  }
  return TruncatedOperator(basis, codomain, from_triplets(codomain->size(), basis->size(), t));
}

SigmaTable::SigmaTable(const NormalWord& w) : w_(w) {
  const auto& g = w.graph();
  expressions_ = coxeter::reduced_expressions(w);
  expression_count_ = expressions_.size();
  const std::size_t n = w.length();
  for (std::size_t e = 0; e < expressions_.size(); ++e) {
    const Letters& r = expressions_[e];
    for (std::size_t k = 0; k <= n; ++k) {
      const Letters prefix(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(k));
      if (!is_canonical(g, prefix)) continue;
      for (std::size_t l = 0; k + l <= n; ++l) {
        const Letters middle(r.begin() + static_cast<std::ptrdiff_t>(k),
                             r.begin() + static_cast<std::ptrdiff_t>(k + l));
        const auto set = clique_of(g, middle);
        if (!set || !is_canonical(g, middle)) continue;
        const Letters suffix(r.begin() + static_cast<std::ptrdiff_t>(k + l), r.end());
        if (!is_canonical(g, suffix)) continue;
        splits_.push_back({k, l, *set, coxeter::right_descents(g, prefix),
                           coxeter::left_descents(g, suffix), e});
      }
    }
  }
}

std::vector<SigmaWitness> SigmaTable::witnesses(std::size_t l, std::size_t k, VertexSet gamma0,
                                                VertexSet gamma1, VertexSet gamma2) const {
  const VertexSet link = w_.graph().link(gamma0);
  std::vector<SigmaWitness> out;
  for (const auto& sp : splits_) {
    if (sp.k != k || sp.l != l || !(sp.middle == gamma0)) continue;
    if (!((sp.prefix_right_descents & link) == gamma1)) continue;
    if (!((sp.suffix_left_descents & link) == gamma2)) continue;
    const Letters& r = expressions_[sp.expression];
    SigmaWitness wit;
    wit.w = w_;
    wit.l = l;
    wit.k = k;
    wit.gamma0 = gamma0;
    wit.gamma1 = gamma1;
    wit.gamma2 = gamma2;
    wit.permutation = permutation_of(w_.letters(), r);
    wit.prefix.assign(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(k));
    wit.middle.assign(r.begin() + static_cast<std::ptrdiff_t>(k),
                      r.begin() + static_cast<std::ptrdiff_t>(k + l));
    wit.suffix.assign(r.begin() + static_cast<std::ptrdiff_t>(k + l), r.end());
    out.push_back(std::move(wit));
  }
  return out;
}

std::optional<SigmaWitness> find_sigma(const NormalWord& w, std::size_t l, std::size_t k,
                                       VertexSet gamma0, VertexSet gamma1, VertexSet gamma2) {
  const auto& g = w.graph();
  const std::size_t n = w.length();
  if (l > n || k > n - l) throw ValidationError("need 0 <= l <= |w| and 0 <= k <= |w| - l");
  if (!g.is_clique(gamma0) || static_cast<std::size_t>(gamma0.size()) != l)
    throw ValidationError("gamma0 must be a clique with l vertices");
  const VertexSet link = g.link(gamma0);
  if (!g.is_clique(gamma1) || !g.is_clique(gamma2) || !gamma1.subset_of(link) ||
      !gamma2.subset_of(link) || !gamma1.disjoint(gamma2))
    throw ValidationError("(gamma1, gamma2) must be disjoint cliques inside Link(gamma0)");
  auto all = SigmaTable(w).witnesses(l, k, gamma0, gamma1, gamma2);
  if (all.empty()) return std::nullopt;
  return all.front();
}

namespace {

// Column-by-column evaluation: each basis vector is sent to at most one
// basis vector, so a summand has at most one entry per column.
void add_summand(const SigmaWitness& wit, double factor, const BallPtr& domain,
                 const BallPtr& codomain, std::vector<Triplet>& out) {
  for (std::size_t col = 0; col < domain->size(); ++col) {
    std::int64_t idx = static_cast<std::int64_t>(col);
    for (auto it = wit.suffix.rbegin(); it != wit.suffix.rend() && idx >= 0; ++it)
      idx = codomain->left_descent(*it, static_cast<std::size_t>(idx))
                ? codomain->left_neighbour(*it, static_cast<std::size_t>(idx))
                : -1;
    for (auto it = wit.middle.begin(); it != wit.middle.end() && idx >= 0; ++it)
      if (!codomain->left_descent(*it, static_cast<std::size_t>(idx))) idx = -1;
    for (auto it = wit.prefix.rbegin(); it != wit.prefix.rend() && idx >= 0; ++it)
      idx = codomain->left_descent(*it, static_cast<std::size_t>(idx))
                ? -1
                : codomain->left_neighbour(*it, static_cast<std::size_t>(idx));
    if (idx >= 0) out.emplace_back(idx, static_cast<std::int64_t>(col), factor);
  }
}

}  // namespace

TruncatedOperator summand(const SigmaWitness& witness, const MultiParameter& q, std::size_t N) {
  coxeter::require_same_graph(q.graph(), witness.w.graph());
  auto domain = coxeter::ball(q.graph_ptr(), N);
  auto codomain = coxeter::ball(q.graph_ptr(), N + witness.w.length());
  std::vector<Triplet> t;
  add_summand(witness, q.p_product(witness.gamma0), domain, codomain, t);
  return TruncatedOperator(domain, codomain, from_triplets(codomain->size(), domain->size(), t));
}

Decomposition decompose(const NormalWord& w, const MultiParameter& q, std::size_t N) {
  const auto& g = w.graph();
  coxeter::require_same_graph(g, q.graph());
  auto domain = coxeter::ball(q.graph_ptr(), N);
  auto codomain = coxeter::ball(q.graph_ptr(), N + w.length());
  const SigmaTable table(w);
  const std::size_t n = w.length();
  std::vector<Triplet> t;
  std::size_t tuples = 0, contributing = 0, max_witnesses = 0;
  for (std::size_t l = 0; l <= n; ++l) {
    const auto gamma0s = coxeter::cliques(g, static_cast<int>(l));
    for (std::size_t k = 0; k + l <= n; ++k)
      for (const auto& gamma0 : gamma0s)
        for (const auto& [gamma1, gamma2] : coxeter::comm_pairs(g, gamma0)) {
          ++tuples;
          const auto found = table.witnesses(l, k, gamma0, gamma1, gamma2);
          max_witnesses = std::max(max_witnesses, found.size());
          if (found.empty()) continue;
          ++contributing;
          const double factor = q.p_product(gamma0);
          if (factor != 0.0) add_summand(found.front(), factor, domain, codomain, t);
        }
  }
  return {TruncatedOperator(domain, codomain, from_triplets(codomain->size(), domain->size(), t)),
          tuples, contributing, max_witnesses};
}

}  // namespace rahecke::wick
