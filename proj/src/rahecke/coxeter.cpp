#include "rahecke/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <unordered_set>

#include <json.hpp>

namespace rahecke::coxeter {

std::size_t LettersHash::operator()(const Letters& letters) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (Generator s : letters) {
    h ^= static_cast<std::uint64_t>(s) + 1;
    h *= 1099511628211ull;
  }
  h ^= letters.size();
  return static_cast<std::size_t>(h);
}

std::vector<Generator> VertexSet::members() const {
  std::vector<Generator> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1)
    out.push_back(static_cast<Generator>(std::countr_zero(b)));
  return out;
}

namespace {

bool identifier_like(const std::string& name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::string fnv_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

CoxeterGraph::CoxeterGraph(std::vector<std::string> generators,
                           const std::vector<std::pair<std::string, std::string>>& commuting_pairs,
                           std::string label)
    : names_(std::move(generators)), label_(std::move(label)) {
  if (names_.empty()) throw ValidationError("graph needs at least one generator");
  if (names_.size() > kMaxGenerators)
    throw ValidationError("at most 64 generators are supported");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!identifier_like(n))
      throw ValidationError("generator name '" + n + "' is not an identifier");
    if (n == "e" || n == "all")
      throw ValidationError("generator name '" + n + "' is reserved");
    if (!seen.insert(n).second) throw ValidationError("duplicate generator '" + n + "'");
  }
  neighbours_.assign(names_.size(), VertexSet{});
  for (const auto& [a, b] : commuting_pairs) {
    const Generator s = require(a);
    const Generator t = require(b);
    if (s == t) throw ValidationError("commuting pair (" + a + "," + a + ") is a loop");
    neighbours_[s] = neighbours_[s] | VertexSet::single(t);
    neighbours_[t] = neighbours_[t] | VertexSet::single(s);
  }
  std::string canonical;
  for (const auto& n : names_) canonical += n + ",";
  canonical += "|";
  for (auto [s, t] : edges()) canonical += std::to_string(s) + "-" + std::to_string(t) + ",";
  hash_ = fnv_hex(canonical);
}

std::optional<Generator> CoxeterGraph::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<Generator>(i);
  return std::nullopt;
}

Generator CoxeterGraph::require(std::string_view name) const {
  if (auto s = find(name)) return *s;
  throw ValidationError("unknown generator '" + std::string(name) + "'");
}

VertexSet CoxeterGraph::all() const {
  return VertexSet(rank() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << rank()) - 1);
}

VertexSet CoxeterGraph::link(VertexSet set) const {
  VertexSet out = all();
  for (Generator s : set.members()) out = out & neighbours_[s];
  return out;
}

bool CoxeterGraph::is_clique(VertexSet set) const {
  if (!set.subset_of(all())) return false;
  for (Generator s : set.members())
    if (!set.minus(VertexSet::single(s)).subset_of(neighbours_[s])) return false;
  return true;
}

std::vector<std::pair<Generator, Generator>> CoxeterGraph::edges() const {
  std::vector<std::pair<Generator, Generator>> out;
  for (std::size_t s = 0; s < rank(); ++s)
    for (Generator t : neighbours_[s].members())
      if (t > s) out.emplace_back(static_cast<Generator>(s), t);
  return out;
}

std::string CoxeterGraph::display(const Letters& letters) const {
  if (letters.empty()) return "e";
  std::string out;
  for (Generator s : letters) out += names_.at(s);
  return out;
}

void require_same_graph(const CoxeterGraph& a, const CoxeterGraph& b) {
  if (&a != &b && !(a == b)) throw ValidationError("words belong to different graphs");
}

// --- words -------------------------------------------------------------------

Letters canonical_order(const CoxeterGraph& g, const Letters& reduced) {
  Letters rest = reduced;
  Letters out;
  out.reserve(rest.size());
  while (!rest.empty()) {
    std::size_t best = rest.size();
    VertexSet before;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      const Generator a = rest[i];
      if (before.subset_of(g.link(a)) && (best == rest.size() || a < rest[best])) best = i;
      before = before | VertexSet::single(a);
    }
    out.push_back(rest[best]);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

Letters normalize_letters(const CoxeterGraph& g, const Letters& letters) {
  Letters out;
  out.reserve(letters.size());
  for (Generator s : letters) {
    if (s >= g.rank()) throw ValidationError("generator index out of range");
    bool cancelled = false;
    for (std::size_t i = out.size(); i-- > 0;) {
      if (out[i] == s) {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
        cancelled = true;
        break;
      }
      if (!g.commute(out[i], s)) break;
    }
    if (!cancelled) out.push_back(s);
  }
  return canonical_order(g, out);
}

bool is_left_descent(const CoxeterGraph& g, const Letters& w, Generator s) {
  for (Generator a : w) {
    if (a == s) return true;
    if (!g.commute(a, s)) return false;
  }
  return false;
}

bool is_right_descent(const CoxeterGraph& g, const Letters& w, Generator s) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (*it == s) return true;
    if (!g.commute(*it, s)) return false;
  }
  return false;
}

VertexSet left_descents(const CoxeterGraph& g, const Letters& w) {
  VertexSet out;
  for (std::size_t s = 0; s < g.rank(); ++s)
    if (is_left_descent(g, w, static_cast<Generator>(s)))
      out = out | VertexSet::single(static_cast<Generator>(s));
  return out;
}

VertexSet right_descents(const CoxeterGraph& g, const Letters& w) {
  VertexSet out;
  for (std::size_t s = 0; s < g.rank(); ++s)
    if (is_right_descent(g, w, static_cast<Generator>(s)))
      out = out | VertexSet::single(static_cast<Generator>(s));
  return out;
}

Letters left_multiply(const CoxeterGraph& g, Generator s, const Letters& w) {
  Letters out;
  out.reserve(w.size() + 1);
  bool removed = false;
  bool blocked = false;
  for (Generator a : w) {
    if (!removed && !blocked) {
      if (a == s) {
        removed = true;
        continue;
      }
      if (!g.commute(a, s)) blocked = true;
    }
    out.push_back(a);
  }
  if (!removed) out.insert(out.begin(), s);
  return canonical_order(g, out);
}

Letters inverse_letters(const Letters& w) { return Letters(w.rbegin(), w.rend()); }

NormalWord NormalWord::inverse() const {
  return NormalWord(graph_, canonical_order(*graph_, inverse_letters(letters_)));
}

NormalWord normalize(const Letters& letters, const CoxeterGraph& g) {
  return NormalWord::from_canonical(g, normalize_letters(g, letters));
}

NormalWord normalize(const std::vector<std::string_view>& names, const CoxeterGraph& g) {
  Letters letters;
  for (auto n : names) letters.push_back(g.require(n));
  return normalize(letters, g);
}

NormalWord mul_word(const NormalWord& a, const NormalWord& b) {
  require_same_graph(a.graph(), b.graph());
  Letters joined = a.letters();
  joined.insert(joined.end(), b.letters().begin(), b.letters().end());
  return normalize(joined, a.graph());
}

std::size_t word_distance(const NormalWord& v, const NormalWord& w) {
  require_same_graph(v.graph(), w.graph());
  Letters joined = inverse_letters(v.letters());
  joined.insert(joined.end(), w.letters().begin(), w.letters().end());
  return normalize_letters(v.graph(), joined).size();
}

bool starts_with(const NormalWord& v, const NormalWord& w) {
  if (v.length() > w.length()) {
    require_same_graph(v.graph(), w.graph());
    return false;
  }
  return word_distance(v, w) == w.length() - v.length();
}

std::vector<Letters> reduced_expressions(const NormalWord& w) {
  const CoxeterGraph& g = w.graph();
  std::vector<Letters> out;
  Letters prefix;
  const std::size_t cap = limits().max_class_size;
  // Depth-first over the letters that can be moved to the front.
  std::function<void(const Letters&)> extend = [&](const Letters& rest) {
    if (rest.empty()) {
      if (out.size() >= cap)
        throw ResourceError("commutation class exceeds " + std::to_string(cap) + " expressions");
      out.push_back(prefix);
      return;
    }
    VertexSet before;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      const Generator a = rest[i];
      if (before.subset_of(g.link(a))) {
        Letters next = rest;
        next.erase(next.begin() + static_cast<std::ptrdiff_t>(i));
        prefix.push_back(a);
        extend(next);
        prefix.pop_back();
      }
      before = before | VertexSet::single(a);
    }
  };
  extend(w.letters());
  std::sort(out.begin(), out.end());
  return out;
}

// --- balls ------------------------------------------------------------------

BallBasis::BallBasis(GraphPtr graph, std::size_t radius) : graph_(std::move(graph)), radius_(radius) {
  const CoxeterGraph& g = *graph_;
  const std::size_t cap = limits().max_ball_elements;
  words_.push_back(NormalWord::identity(g));
  offsets_ = {0, 1};
  std::vector<Letters> frontier{Letters{}};
  for (std::size_t n = 1; n <= radius; ++n) {
    std::unordered_set<Letters, LettersHash> next_set;
    for (const auto& w : frontier) {
      for (std::size_t s = 0; s < g.rank(); ++s) {
        const auto gen = static_cast<Generator>(s);
        if (is_right_descent(g, w, gen)) continue;
        Letters extended = w;
        extended.push_back(gen);
        next_set.insert(canonical_order(g, extended));
      }
    }
    std::vector<Letters> next(next_set.begin(), next_set.end());
    std::sort(next.begin(), next.end());
    if (words_.size() + next.size() > cap)
      throw ResourceError("ball of radius " + std::to_string(radius) + " exceeds " +
                          std::to_string(cap) + " elements");
    for (const auto& w : next) words_.push_back(NormalWord::from_canonical(g, w));
    offsets_.push_back(words_.size());
    frontier = std::move(next);
  }
  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i].letters(), i);
  neighbour_.assign(words_.size() * g.rank(), -1);
  for (std::size_t i = 0; i < words_.size(); ++i)
    for (std::size_t s = 0; s < g.rank(); ++s) {
      const auto gen = static_cast<Generator>(s);
      if (words_[i].length() == radius && !is_left_descent(g, words_[i].letters(), gen)) continue;
      neighbour_[i * g.rank() + s] =
          static_cast<std::int64_t>(index_.at(left_multiply(g, gen, words_[i].letters())));
    }
}

std::optional<std::size_t> BallBasis::find(const Letters& letters) const {
  auto it = index_.find(letters);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t BallBasis::index(const NormalWord& w) const {
  require_same_graph(w.graph(), *graph_);
  if (auto i = find(w.letters())) return *i;
  throw ValidationError("word " + w.str() + " is outside the ball of radius " +
                        std::to_string(radius_));
}

std::pair<std::size_t, std::size_t> BallBasis::sphere(std::size_t n) const {
  if (n > radius_) throw ValidationError("sphere " + std::to_string(n) + " outside ball");
  return {offsets_[n], offsets_[n + 1]};
}

std::vector<std::size_t> BallBasis::sphere_sizes() const {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n <= radius_; ++n) out.push_back(offsets_[n + 1] - offsets_[n]);
  return out;
}

BallPtr ball(const GraphPtr& graph, std::size_t radius) {
  static std::mutex mutex;
  static std::map<std::pair<std::string, std::size_t>, BallPtr> cache;
  const auto key = std::make_pair(graph->content_hash(), radius);
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end() && *it->second->graph_ptr() == *graph) return it->second;
  }
  auto built = std::make_shared<const BallBasis>(graph, radius);
  std::lock_guard lock(mutex);
  cache[key] = built;
  return built;
}

// --- graph combinatorics ------------------------------------------------------

GraphAnalysis graph_analysis(const CoxeterGraph& g) {
  const auto n = static_cast<Generator>(g.rank());
  for (Generator a = 0; a < n; ++a)
    for (Generator b : g.link(a).members())
      for (Generator c : g.link(b).members()) {
        if (c == a || g.commute(a, c)) continue;
        for (Generator d : (g.link(c) & g.link(a)).members()) {
          if (d == b || g.commute(b, d)) continue;
          return {false, std::array<Generator, 4>{a, b, c, d}};
        }
      }
  return {true, std::nullopt};
}

std::vector<VertexSet> cliques_within(const CoxeterGraph& g, VertexSet within) {
  std::vector<VertexSet> out;
  std::function<void(VertexSet, VertexSet)> grow = [&](VertexSet current, VertexSet candidates) {
    out.push_back(current);
    for (Generator s : candidates.members()) {
      // Only larger indices keep each clique generated once.
      const VertexSet higher(candidates.bits() & ~((std::uint64_t{2} << s) - 1));
      grow(current | VertexSet::single(s), higher & g.link(s));
    }
  };
  grow(VertexSet{}, within & g.all());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexSet> cliques(const CoxeterGraph& g, std::optional<int> size) {
  auto all = cliques_within(g, g.all());
  if (!size) return all;
  std::vector<VertexSet> out;
  for (auto c : all)
    if (c.size() == *size) out.push_back(c);
  return out;
}

std::vector<std::pair<VertexSet, VertexSet>> comm_pairs(const CoxeterGraph& g, VertexSet base) {
  if (!g.is_clique(base)) throw ValidationError("Comm() needs a clique");
  const auto inside = cliques_within(g, g.link(base));
  std::vector<std::pair<VertexSet, VertexSet>> out;
  for (auto a : inside)
    for (auto b : inside)
      if (a.disjoint(b)) out.emplace_back(a, b);
  return out;
}

NormalWord clique_element(const CoxeterGraph& g, VertexSet clique) {
  if (!g.is_clique(clique)) throw ValidationError("vertex set is not a clique");
  return NormalWord::from_canonical(g, canonical_order(g, clique.members()));
}

FourPointResult four_point_delta(const BallBasis& basis, bool allow_sampling, std::uint64_t seed) {
  const std::size_t n = basis.size();
  if (n == 0) throw ValidationError("empty basis");
  FourPointResult result;
  if (n < 4) return result;
  std::vector<std::uint16_t> dist(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      const auto d = static_cast<std::uint16_t>(word_distance(basis.word(a), basis.word(b)));
      dist[a * n + b] = d;
      dist[b * n + a] = d;
    }
  auto defect = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    const int s1 = dist[a * n + b] + dist[c * n + d];
    const int s2 = dist[a * n + c] + dist[b * n + d];
    const int s3 = dist[a * n + d] + dist[b * n + c];
    const int hi = std::max({s1, s2, s3});
    const int mid = s1 + s2 + s3 - hi - std::min({s1, s2, s3});
    return hi - mid;
  };
  const double nd = static_cast<double>(n);
  const double count = nd * (nd - 1) * (nd - 2) * (nd - 3) / 24.0;
  const std::uint64_t cap = limits().max_quadruples;
  if (count > static_cast<double>(cap)) {
    if (!allow_sampling)
      throw ResourceError("four-point scan needs " + format12(count) + " quadruples (cap " +
                          std::to_string(cap) + ")");
    StableRng rng(seed);
    int best = 0;
    for (std::uint64_t k = 0; k < cap; ++k)
      best = std::max(best, defect(rng.below(n), rng.below(n), rng.below(n), rng.below(n)));
    return {static_cast<double>(best), true, cap};
  }
  std::vector<int> per_first(n, 0);
  parallel_for(n, [&](std::size_t a) {
    int best = 0;
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        const std::uint16_t* ra = &dist[a * n];
        const std::uint16_t* rb = &dist[b * n];
        const std::uint16_t* rc = &dist[c * n];
        const int ab = ra[b], ac = ra[c], bc = rb[c];
        for (std::size_t d = c + 1; d < n; ++d) {
          const int s1 = ab + rc[d];
          const int s2 = ac + rb[d];
          const int s3 = ra[d] + bc;
          const int hi = std::max({s1, s2, s3});
          const int mid = s1 + s2 + s3 - hi - std::min({s1, s2, s3});
          best = std::max(best, hi - mid);
        }
      }
    per_first[a] = best;
  });
  result.delta = *std::max_element(per_first.begin(), per_first.end());
  result.quadruples = static_cast<std::uint64_t>(count);
  return result;
}

// --- ball cache file ------------------------------------------------------------

void save_ball_cache(const std::string& path, const BallBasis& basis) {
  nlohmann::json doc;
  doc["schema"] = kSchemaVersion;
  doc["kind"] = "ball";
  doc["graph_hash"] = basis.graph().content_hash();
  doc["radius"] = basis.radius();
  auto& words = doc["words"] = nlohmann::json::array();
  for (const auto& w : basis.words()) words.push_back(w.letters());
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << doc.dump() << "\n";
}

BallPtr load_ball_cache(const std::string& path, const GraphPtr& graph, std::size_t radius) {
  std::ifstream in(path);
  if (!in) return nullptr;
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded() || doc.value("schema", 0) != kSchemaVersion ||
      doc.value("graph_hash", std::string{}) != graph->content_hash() ||
      doc.value("radius", std::size_t{0}) != radius)
    return nullptr;
  auto built = ball(graph, radius);
  // The cached word list must agree with a fresh enumeration.
  const auto& words = doc["words"];
  if (!words.is_array() || words.size() != built->size()) return nullptr;
  for (std::size_t i = 0; i < words.size(); ++i)
    if (words[i].get<Letters>() != built->word(i).letters()) return nullptr;
  return built;
}

}  // namespace rahecke::coxeter
