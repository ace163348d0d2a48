#pragma once

// Right-angled Coxeter systems: the commutation graph, canonical words,
// balls of the Cayley graph and the combinatorics built on cliques.

#include <array>
#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rahecke/common.hpp"

namespace rahecke::coxeter {

using Generator = std::uint8_t;
using Letters = std::vector<Generator>;

inline constexpr std::size_t kMaxGenerators = 64;

struct LettersHash {
  std::size_t operator()(const Letters& letters) const noexcept;
};

/// Order of the ball basis: length first, then lexicographic in generator order.
struct ShortLex {
  bool operator()(const Letters& a, const Letters& b) const noexcept {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// A set of generators stored as a bit mask. Cliques, links and descent
/// sets are all vertex sets.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}
  static VertexSet single(Generator s) { return VertexSet(std::uint64_t{1} << s); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }
  bool contains(Generator s) const { return (bits_ >> s) & 1u; }
  std::vector<Generator> members() const;

  VertexSet operator&(VertexSet o) const { return VertexSet(bits_ & o.bits_); }
  VertexSet operator|(VertexSet o) const { return VertexSet(bits_ | o.bits_); }
  VertexSet minus(VertexSet o) const { return VertexSet(bits_ & ~o.bits_); }
  bool subset_of(VertexSet o) const { return (bits_ & ~o.bits_) == 0; }
  bool disjoint(VertexSet o) const { return (bits_ & o.bits_) == 0; }

  friend bool operator==(VertexSet, VertexSet) = default;
  // (size, bits) order keeps enumerations deterministic.
  friend bool operator<(VertexSet a, VertexSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.bits_ < b.bits_;
  }

 private:
  std::uint64_t bits_ = 0;
};

/// Finite simplicial graph of a right-angled system: an edge s-t means
/// m(s,t) = 2, a missing edge between distinct generators means m(s,t) = inf.
class CoxeterGraph {
 public:
  /// Validates names (nonempty, distinct, identifier-like, not "e"/"all")
  /// and the pair list (known names, no (s,s)). Duplicate pairs collapse.
  CoxeterGraph(std::vector<std::string> generators,
               const std::vector<std::pair<std::string, std::string>>& commuting_pairs,
               std::string label = {});

  std::size_t rank() const { return names_.size(); }
  const std::string& label() const { return label_; }
  const std::string& name(Generator s) const { return names_.at(s); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Generator> find(std::string_view name) const;
  Generator require(std::string_view name) const;

  /// True iff s != t and m(s,t) = 2.
  bool commute(Generator s, Generator t) const { return neighbours_[s].contains(t); }
  VertexSet link(Generator s) const { return neighbours_[s]; }
  /// Common link; Link(empty) is the full vertex set.
  VertexSet link(VertexSet set) const;
  VertexSet all() const;
  bool is_clique(VertexSet set) const;

  std::vector<std::pair<Generator, Generator>> edges() const;
  /// FNV-1a over names and sorted edges, hex encoded.
  const std::string& content_hash() const { return hash_; }
  std::string display(const Letters& letters) const;

  bool operator==(const CoxeterGraph& other) const {
    return names_ == other.names_ && neighbours_ == other.neighbours_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<VertexSet> neighbours_;
  std::string label_;
  std::string hash_;
};

using GraphPtr = std::shared_ptr<const CoxeterGraph>;

void require_same_graph(const CoxeterGraph& a, const CoxeterGraph& b);

// --- word-level primitives on canonical letter sequences ------------------

/// Reduces an arbitrary sequence by deleting pairs s..s whose intervening
/// letters all commute with s, then returns the lexicographically least
/// representative of the commutation class.
Letters normalize_letters(const CoxeterGraph& g, const Letters& letters);
/// Lexicographic normal form of an already reduced word.
Letters canonical_order(const CoxeterGraph& g, const Letters& reduced);
/// s <= w in right weak order, i.e. |s w| < |w|.
bool is_left_descent(const CoxeterGraph& g, const Letters& w, Generator s);
/// |w s| < |w|.
bool is_right_descent(const CoxeterGraph& g, const Letters& w, Generator s);
VertexSet left_descents(const CoxeterGraph& g, const Letters& w);
VertexSet right_descents(const CoxeterGraph& g, const Letters& w);
/// Canonical form of s*w for canonical w.
Letters left_multiply(const CoxeterGraph& g, Generator s, const Letters& w);
Letters inverse_letters(const Letters& w);

/// Canonical reduced word, bound to the graph it lives in. The graph must
/// outlive the word; BallBasis and MultiParameter keep it alive.
class NormalWord {
 public:
  NormalWord() = default;
  static NormalWord identity(const CoxeterGraph& g) { return NormalWord(&g, {}); }
  /// Trusted constructor: letters must already be canonical.
  static NormalWord from_canonical(const CoxeterGraph& g, Letters letters) {
    return NormalWord(&g, std::move(letters));
  }

  const CoxeterGraph& graph() const { return *graph_; }
  const Letters& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }
  NormalWord inverse() const;
  std::string str() const { return graph_->display(letters_); }

  friend bool operator==(const NormalWord& a, const NormalWord& b) {
    return a.letters_ == b.letters_ && (a.graph_ == b.graph_ || *a.graph_ == *b.graph_);
  }
  friend bool operator<(const NormalWord& a, const NormalWord& b) {
    return ShortLex{}(a.letters_, b.letters_);
  }

 private:
  NormalWord(const CoxeterGraph* g, Letters letters) : graph_(g), letters_(std::move(letters)) {}
  const CoxeterGraph* graph_ = nullptr;
  Letters letters_;
};

NormalWord normalize(const Letters& letters, const CoxeterGraph& g);
NormalWord normalize(const std::vector<std::string_view>& names, const CoxeterGraph& g);
NormalWord mul_word(const NormalWord& a, const NormalWord& b);
/// v <=_R w, i.e. |v^-1 w| = |w| - |v|.
bool starts_with(const NormalWord& v, const NormalWord& w);
/// |v^-1 w|.
std::size_t word_distance(const NormalWord& v, const NormalWord& w);

/// Every reduced expression of w; the set is the commutation class.
std::vector<Letters> reduced_expressions(const NormalWord& w);

/// All words of length <= radius in shortlex order. Ball(N) is a prefix of
/// Ball(M) for M >= N, so compressions are leading blocks.
class BallBasis {
 public:
  BallBasis(GraphPtr graph, std::size_t radius);

  const GraphPtr& graph_ptr() const { return graph_; }
  const CoxeterGraph& graph() const { return *graph_; }
  std::size_t radius() const { return radius_; }
  std::size_t size() const { return words_.size(); }
  const NormalWord& word(std::size_t i) const { return words_[i]; }
  const std::vector<NormalWord>& words() const { return words_; }
  std::optional<std::size_t> find(const Letters& letters) const;
  std::size_t index(const NormalWord& w) const;
  std::size_t length_of(std::size_t i) const { return words_[i].length(); }
  /// Index range [begin, end) of the words of length n.
  std::pair<std::size_t, std::size_t> sphere(std::size_t n) const;
  std::size_t ball_size(std::size_t n) const { return sphere(n).second; }
  std::vector<std::size_t> sphere_sizes() const;
  /// Index of s*w_i in this ball, or -1 when |s w_i| exceeds the radius.
  std::int64_t left_neighbour(Generator s, std::size_t i) const {
    return neighbour_[i * graph_->rank() + s];
  }
  /// s <= w_i, read off the neighbour table.
  bool left_descent(Generator s, std::size_t i) const {
    const auto j = left_neighbour(s, i);
    return j >= 0 && length_of(static_cast<std::size_t>(j)) < length_of(i);
  }

 private:
  GraphPtr graph_;
  std::size_t radius_;
  std::vector<NormalWord> words_;
  std::vector<std::size_t> offsets_;
  std::unordered_map<Letters, std::size_t, LettersHash> index_;
  std::vector<std::int64_t> neighbour_;
};

using BallPtr = std::shared_ptr<const BallBasis>;

/// Memoised ball construction keyed by graph content and radius.
BallPtr ball(const GraphPtr& graph, std::size_t radius);

struct GraphAnalysis {
  bool hyperbolic = true;
  /// (s1, s2, s3, s4) with edges s1s2, s2s3, s3s4, s4s1 and non-edges s1s3, s2s4.
  std::optional<std::array<Generator, 4>> square_witness;
};

GraphAnalysis graph_analysis(const CoxeterGraph& g);

/// All cliques including the empty one, ordered by (size, bits); only
/// those with exactly `size` vertices when given.
std::vector<VertexSet> cliques(const CoxeterGraph& g, std::optional<int> size = std::nullopt);
/// Cliques contained in a vertex set.
std::vector<VertexSet> cliques_within(const CoxeterGraph& g, VertexSet within);
/// Ordered pairs of disjoint cliques inside Link(base).
std::vector<std::pair<VertexSet, VertexSet>> comm_pairs(const CoxeterGraph& g, VertexSet base);
/// Canonical word of the product of the clique's generators.
NormalWord clique_element(const CoxeterGraph& g, VertexSet clique);

struct FourPointResult {
  double delta = 0.0;
  bool sampled = false;
  std::uint64_t quadruples = 0;
};

/// Maximum four-point defect over the ball. Exceeding the quadruple cap is
/// a ResourceError unless sampling is allowed, in which case the result is a
/// lower bound flagged as sampled.
FourPointResult four_point_delta(const BallBasis& basis, bool allow_sampling = false,
                                 std::uint64_t seed = 1);

// --- optional on-disk cache of balls ---------------------------------------

void save_ball_cache(const std::string& path, const BallBasis& basis);
/// Returns nullptr when the file does not match the graph hash or radius.
BallPtr load_ball_cache(const std::string& path, const GraphPtr& graph, std::size_t radius);

}  // namespace rahecke::coxeter
