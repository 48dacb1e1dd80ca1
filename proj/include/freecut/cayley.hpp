#ifndef FREECUT_CAYLEY_HPP
#define FREECUT_CAYLEY_HPP

// Finite subtrees of the Cayley tree, hulls and cores of line collections,
// and pruning of cores.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "freecut/error.hpp"
#include "freecut/pattern.hpp"
#include "freecut/ray.hpp"
#include "freecut/word.hpp"

namespace freecut {

// A directed tree edge from `from` to `from * letter`.
struct TreeEdge {
  Word from;
  Letter letter;

  Word to() const { return from.times(letter); }

  // Same edge, oriented away from the identity.
  TreeEdge outward() const {
    if (!from.empty() && from.back() == letter.inverse()) return {to(), letter.inverse()};
    return *this;
  }

  std::string to_string() const { return from.to_string() + "|" + std::string(1, letter.to_char()); }

  friend bool operator==(const TreeEdge&, const TreeEdge&) = default;
  friend auto operator<=>(const TreeEdge& x, const TreeEdge& y) {
    if (auto c = x.from <=> y.from; c != 0) return c;
    return x.letter <=> y.letter;
  }
};

// A nonempty connected finite set of vertices.
class Subtree {
 public:
  Subtree() : vertices_{Word()} {}

  explicit Subtree(std::vector<Word> vertices) : vertices_(std::move(vertices)) {
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
    if (vertices_.empty()) throw Error("subtree must be nonempty");
    // connected iff every vertex except the one nearest the identity has its
    // parent in the set
    const Word* top = &vertices_.front();
    for (const Word& v : vertices_) {
      if (v.size() < top->size()) top = &v;
    }
    for (const Word& v : vertices_) {
      if (&v == top) continue;
      if (v.empty() || !contains(v.prefix(v.size() - 1))) throw Error("subtree is not connected");
    }
  }

  static Subtree single(const Word& v) { return Subtree(std::vector<Word>{v}); }

  const std::vector<Word>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

  bool contains(const Word& v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

  std::vector<Word> neighbors(const Word& v, unsigned rank) const {
    std::vector<Word> out;
    for (unsigned c = 0; c < 2 * rank; ++c) {
      Word u = v.times(Letter::from_code(c));
      if (contains(u)) out.push_back(std::move(u));
    }
    return out;
  }

  // Undirected edges, each oriented away from the identity, sorted.
  std::vector<TreeEdge> edges() const {
    std::vector<TreeEdge> out;
    for (const Word& v : vertices_) {
      if (!v.empty() && contains(v.prefix(v.size() - 1))) {
        out.push_back({v.prefix(v.size() - 1), v.back()});
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Directed edges leaving the subtree, sorted.
  std::vector<TreeEdge> frontier(unsigned rank) const {
    std::vector<TreeEdge> out;
    for (const Word& v : vertices_) {
      for (unsigned c = 0; c < 2 * rank; ++c) {
        Letter l = Letter::from_code(c);
        if (!contains(v.times(l))) out.push_back({v, l});
      }
    }
    return out;
  }

  std::vector<std::string> to_strings() const {
    std::vector<std::string> out;
    for (const Word& v : vertices_) out.push_back(v.to_string());
    return out;
  }

  friend bool operator==(const Subtree&, const Subtree&) = default;

 private:
  std::vector<Word> vertices_;
};

// Index-based view of a subtree for constant-time walking.
class LocalTree {
 public:
  LocalTree(const Subtree& t, unsigned rank) : rank_(rank), vertices_(t.vertices()) {
    index_.reserve(vertices_.size() * 2);
    for (std::size_t i = 0; i < vertices_.size(); ++i) index_.emplace(vertices_[i], static_cast<int>(i));
    nbr_.assign(vertices_.size() * 2 * rank, -1);
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      for (unsigned c = 0; c < 2 * rank; ++c) {
        auto it = index_.find(vertices_[i].times(Letter::from_code(c)));
        if (it != index_.end()) nbr_[i * 2 * rank + c] = it->second;
      }
    }
  }

  std::size_t size() const { return vertices_.size(); }
  const Word& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  int neighbor(int i, Letter l) const { return nbr_[static_cast<std::size_t>(i) * 2 * rank_ + l.code()]; }
  int find(const Word& w) const {
    auto it = index_.find(w);
    return it == index_.end() ? -1 : it->second;
  }

 private:
  unsigned rank_;
  std::vector<Word> vertices_;
  std::unordered_map<Word, int, WordHash> index_;
  std::vector<int> nbr_;
};

inline Subtree ball(unsigned rank, unsigned radius, std::uint64_t cap = kDefaultEnumerationCap) {
  check_rank(rank);
  BigInt total = 0;
  for (unsigned n = 0; n <= radius; ++n) total += count_reduced_words(rank, n);
  if (total > cap) throw BudgetExceeded("ball of radius " + std::to_string(radius) + " exceeds cap");
  std::vector<Word> out{Word()};
  for (unsigned n = 1; n <= radius; ++n) {
    ReducedWordEnumerator it(rank, n, cap);
    Word w;
    while (it.next(w)) out.push_back(w);
  }
  return Subtree(std::move(out));
}

// Distinct lines meeting a subtree, sorted.
inline std::vector<Line> lines_meeting(const LinePattern& p, const Subtree& x) {
  std::vector<Line> out;
  for (const Word& v : x.vertices()) {
    auto ls = lines_through_vertex(p, v);
    out.insert(out.end(), ls.begin(), ls.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Vertices on the tree geodesic between u and v.
inline std::vector<Word> geodesic(const Word& u, const Word& v) {
  const std::size_t c = common_prefix(u.letters(), v.letters());
  std::vector<Word> out;
  for (std::size_t k = u.size() + 1; k-- > c;) out.push_back(u.prefix(k));
  for (std::size_t k = c + 1; k <= v.size(); ++k) out.push_back(v.prefix(k));
  return out;
}

inline Subtree convex_hull(const std::vector<Word>& points) {
  if (points.empty()) throw Error("hull of an empty set");
  std::vector<Word> all;
  for (const Word& q : points) {
    auto g = geodesic(points.front(), q);
    all.insert(all.end(), g.begin(), g.end());
  }
  return Subtree(std::move(all));
}

// Last common vertex of two rays issuing from the identity.
inline Word divergence_vertex(const Ray& x, const Ray& y) {
  return x.vertex_at(ray_common_prefix(x, y));
}

// Center of the tripod spanned by three distinct rays: the deepest of the
// three pairwise divergence vertices.
inline Word ray_median(const Ray& x, const Ray& y, const Ray& z) {
  const std::size_t xy = ray_common_prefix(x, y);
  const std::size_t xz = ray_common_prefix(x, z);
  const std::size_t yz = ray_common_prefix(y, z);
  if (xy >= xz && xy >= yz) return x.vertex_at(xy);
  if (xz >= yz) return x.vertex_at(xz);
  return y.vertex_at(yz);
}

// Core of the convex hull of the endpoints of at least two distinct lines: the
// hull of its branch points, which are the medians of endpoint triples.
inline Subtree hull_core(const LinePattern& p, const std::vector<Line>& lines) {
  std::vector<Line> distinct = lines;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 2) throw Error("hull_core needs at least two distinct lines");
  std::vector<Ray> rays;
  for (const Line& l : distinct) {
    auto [a, b] = line_endpoints(p, l);
    rays.push_back(std::move(a));
    rays.push_back(std::move(b));
  }
  std::vector<Word> medians;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    for (std::size_t j = i + 1; j < rays.size(); ++j) {
      for (std::size_t k = j + 1; k < rays.size(); ++k) {
        medians.push_back(ray_median(rays[i], rays[j], rays[k]));
      }
    }
  }
  std::sort(medians.begin(), medians.end());
  medians.erase(std::unique(medians.begin(), medians.end()), medians.end());
  return convex_hull(medians);
}

enum class CoreKind { kEdge, kVertex, kTree };

inline std::string to_string(CoreKind k) {
  switch (k) {
    case CoreKind::kEdge:
      return "EDGE";
    case CoreKind::kVertex:
      return "VERTEX";
    case CoreKind::kTree:
      return "TREE";
  }
  return "?";
}

struct PrunedCore {
  CoreKind kind = CoreKind::kVertex;
  Subtree subtree;
  std::optional<TreeEdge> retained_edge;  // outward-oriented, set iff kind == kEdge
};

// Orders edges by distance from the identity (the nearer endpoint), then by
// the farther endpoint.
inline bool edge_nearer(const TreeEdge& x, const TreeEdge& y) {
  const TreeEdge a = x.outward();
  const TreeEdge b = y.outward();
  if (a.from.size() != b.from.size()) return a.from.size() < b.from.size();
  return a.to() < b.to();
}

namespace detail {

inline bool every_line_through_v_uses(const LinePattern& p, const std::vector<Line>& lines, const Word& v,
                                      const Word& stem_end) {
  for (const Line& l : lines) {
    if (line_contains(p, l, v) && !line_contains(p, l, stem_end)) return false;
  }
  return true;
}

// Edge of `core` traversed by every line, nearest the identity.
inline std::optional<TreeEdge> canonical_common_edge(const LinePattern& p, const Subtree& core,
                                                     const std::vector<Line>& lines) {
  std::optional<TreeEdge> best;
  for (const TreeEdge& e : core.edges()) {
    bool all = true;
    const Word to = e.to();
    for (const Line& l : lines) {
      if (!line_contains(p, l, e.from) || !line_contains(p, l, to)) {
        all = false;
        break;
      }
    }
    if (all && (!best || edge_nearer(e, *best))) best = e;
  }
  return best;
}

}  // namespace detail

// Repeatedly removes a leaf whose lines (from `lines`) all continue through its
// stem. When every line runs through a common edge of the core the result is
// that edge (the one nearest the identity if there are several); this is the
// case in which two adjacent prunable leaves can remain. Leaves are taken in
// lexicographic order unless `shuffle` is given, in which case a random
// prunable leaf is taken; the result does not depend on the order.
inline PrunedCore prune_core(const LinePattern& p, const Subtree& core, const std::vector<Line>& lines,
                             Rng* shuffle = nullptr) {
  const unsigned rank = p.rank();
  std::set<Word> current(core.vertices().begin(), core.vertices().end());
  auto neighbors_in = [&](const Word& v) {
    std::vector<Word> out;
    for (unsigned c = 0; c < 2 * rank; ++c) {
      Word u = v.times(Letter::from_code(c));
      if (current.count(u)) out.push_back(std::move(u));
    }
    return out;
  };
  if (auto e = detail::canonical_common_edge(p, core, lines)) {
    return {CoreKind::kEdge, Subtree(std::vector<Word>{e->from, e->to()}), e->outward()};
  }
  for (;;) {
    if (current.size() == 1) {
      return {CoreKind::kVertex, Subtree(std::vector<Word>(current.begin(), current.end())), std::nullopt};
    }
    std::vector<Word> prunable;
    for (const Word& v : current) {
      auto nb = neighbors_in(v);
      if (nb.size() == 1 && detail::every_line_through_v_uses(p, lines, v, nb.front())) prunable.push_back(v);
    }
    if (prunable.empty()) {
      return {CoreKind::kTree, Subtree(std::vector<Word>(current.begin(), current.end())), std::nullopt};
    }
    std::size_t pick = 0;
    if (shuffle) pick = std::uniform_int_distribution<std::size_t>(0, prunable.size() - 1)(*shuffle);
    current.erase(prunable[pick]);
  }
}

}  // namespace freecut

#endif  // FREECUT_CAYLEY_HPP
