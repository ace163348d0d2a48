#pragma once

// Creation / annihilation / diagonal parts of the generators and the
// expansion of T_w into products of them.

#include <optional>
#include <vector>

#include "rahecke/gns.hpp"

namespace rahecke::wick {

using coxeter::BallPtr;
using coxeter::Generator;
using coxeter::Letters;
using coxeter::NormalWord;
using coxeter::VertexSet;
using gns::TruncatedOperator;
using hecke::MultiParameter;

/// Diagonal 0/1 operator on basis: 1 at v iff u <= v.
TruncatedOperator q_projection(const NormalWord& u, const BallPtr& basis);

enum class LadderKind { creation, annihilation, diagonal };

/// Creation maps basis to ball(radius + 1); the other two stay in basis.
TruncatedOperator ladder(Generator s, LadderKind kind, const MultiParameter& q, const BallPtr& basis);

struct SigmaWitness {
  NormalWord w;
  std::size_t l = 0;
  std::size_t k = 0;
  VertexSet gamma0, gamma1, gamma2;
  /// sigma as 0-based positions into the letters of w.
  std::vector<std::size_t> permutation;
  Letters prefix, middle, suffix;
};

/// Every split of every reduced expression of one word, indexed for the
/// witness conditions. Built once per word and reused for all tuples.
class SigmaTable {
 public:
  explicit SigmaTable(const NormalWord& w);

  const NormalWord& word() const { return w_; }
  std::size_t expressions() const { return expression_count_; }
  /// All permutations meeting the witness conditions; at most one is expected.
  std::vector<SigmaWitness> witnesses(std::size_t l, std::size_t k, VertexSet gamma0,
                                      VertexSet gamma1, VertexSet gamma2) const;

 private:
  struct Split {
    std::size_t k, l;
    VertexSet middle, prefix_right_descents, suffix_left_descents;
    std::size_t expression;
  };
  NormalWord w_;
  std::vector<Letters> expressions_;
  std::vector<Split> splits_;
  std::size_t expression_count_ = 0;
};

/// Validates the tuple and returns the witness permutation, if any.
std::optional<SigmaWitness> find_sigma(const NormalWord& w, std::size_t l, std::size_t k,
                                       VertexSet gamma0, VertexSet gamma1, VertexSet gamma2);

/// One summand on ball(N) with codomain ball(N + |w|): creations along the
/// prefix, the clique factor times Q_{V(gamma0)}, annihilations along the suffix.
TruncatedOperator summand(const SigmaWitness& witness, const MultiParameter& q, std::size_t N);

struct Decomposition {
  TruncatedOperator op;
  std::size_t tuples = 0;         // (l, k, gamma0, gamma1, gamma2) visited
  std::size_t contributing = 0;   // tuples with a witness
  std::size_t max_witnesses = 0;  // largest witness count seen for one tuple
};

Decomposition decompose(const NormalWord& w, const MultiParameter& q, std::size_t N);

}  // namespace rahecke::wick
