#ifndef FREECUT_WHITEHEAD_HPP
#define FREECUT_WHITEHEAD_HPP

// Generalized Whitehead graphs of bounded subtrees.
//
// For a subtree X, the components of the complement of X are in bijection with
// the directed frontier edges leaving X; those are the vertices. Each pattern
// line meeting X crosses it along a path and contributes one edge joining the
// frontier edges through which it enters and leaves.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "freecut/cayley.hpp"
#include "freecut/error.hpp"
#include "freecut/pattern.hpp"
#include "freecut/word.hpp"

namespace freecut {

// A frontier edge (vertex, letter), or a loose terminal standing in for a
// deleted frontier edge (loose != 0).
struct ComponentId {
  Word vertex;
  Letter letter;
  std::uint32_t loose = 0;

  bool is_loose() const { return loose != 0; }
  TreeEdge edge() const { return {vertex, letter}; }

  std::string to_string() const {
    std::string s = vertex.to_string() + "|" + std::string(1, letter.to_char());
    return loose ? "~" + std::to_string(loose) + "(" + s + ")" : s;
  }

  friend bool operator==(const ComponentId&, const ComponentId&) = default;
  friend auto operator<=>(const ComponentId& x, const ComponentId& y) {
    if (auto c = x.loose <=> y.loose; c != 0) return c;
    if (auto c = x.vertex <=> y.vertex; c != 0) return c;
    return x.letter <=> y.letter;
  }
};

struct WhEdge {
  ComponentId a;
  ComponentId b;
  Line line;

  friend bool operator==(const WhEdge&, const WhEdge&) = default;
  friend auto operator<=>(const WhEdge& x, const WhEdge& y) {
    if (auto c = x.line <=> y.line; c != 0) return c;
    if (auto c = x.a <=> y.a; c != 0) return c;
    return x.b <=> y.b;
  }
};

class WhiteheadGraph {
 public:
  WhiteheadGraph(Subtree subtree, std::vector<ComponentId> vertices, std::vector<WhEdge> edges,
                 std::uint32_t next_loose = 1, std::vector<TreeEdge> deleted = {})
      : subtree_(std::move(subtree)), vertices_(std::move(vertices)), edges_(std::move(edges)),
        next_loose_(next_loose), deleted_(std::move(deleted)) {
    std::sort(vertices_.begin(), vertices_.end());
    std::sort(deleted_.begin(), deleted_.end());
    for (WhEdge& e : edges_) {
      if (e.b < e.a) std::swap(e.a, e.b);
    }
    std::sort(edges_.begin(), edges_.end());
  }

  const Subtree& subtree() const { return subtree_; }
  // Real (non-loose) vertices, sorted.
  const std::vector<ComponentId>& vertices() const { return vertices_; }
  // Edges sorted by line; endpoints ordered within each edge.
  const std::vector<WhEdge>& edges() const { return edges_; }
  std::uint32_t next_loose() const { return next_loose_; }
  // Frontier edges removed by delete_vertex and not yet spliced.
  const std::vector<TreeEdge>& deleted() const { return deleted_; }

  bool has_vertex(const ComponentId& v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

  int vertex_index(const ComponentId& v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) return -1;
    return static_cast<int>(it - vertices_.begin());
  }

  std::vector<Line> lines() const {
    std::vector<Line> out;
    for (const WhEdge& e : edges_) out.push_back(e.line);
    return out;
  }

  // Edge lists compared as line-labelled multigraphs.
  friend bool same_graph(const WhiteheadGraph& x, const WhiteheadGraph& y) {
    return x.vertices_ == y.vertices_ && x.edges_ == y.edges_;
  }

 private:
  Subtree subtree_;
  std::vector<ComponentId> vertices_;
  std::vector<WhEdge> edges_;
  std::uint32_t next_loose_ = 1;
  std::vector<TreeEdge> deleted_;
};

inline WhiteheadGraph wh_subtree(const LinePattern& p, const Subtree& x) {
  const unsigned rank = p.rank();
  LocalTree tree(x, rank);
  std::vector<ComponentId> vertices;
  for (const TreeEdge& f : x.frontier(rank)) vertices.push_back({f.from, f.letter, 0});
  std::vector<WhEdge> edges;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const int vi = static_cast<int>(i);
    for (const PatternWord& pw : p.words()) {
      const std::size_t len = pw.word.size();
      for (std::size_t o = 0; o < len; ++o) {
        // handle each line once, from the vertex where it enters X
        const Letter back = backward_letter(p, pw.id, o);
        if (tree.neighbor(vi, back) >= 0) continue;
        int cur = vi;
        std::size_t off = o;
        for (;;) {
          const int nxt = tree.neighbor(cur, forward_letter(p, pw.id, off));
          if (nxt < 0) break;
          cur = nxt;
          off = (off + 1) % len;
        }
        edges.push_back({ComponentId{tree.vertex(vi), back, 0},
                         ComponentId{tree.vertex(cur), forward_letter(p, pw.id, off), 0},
                         line_through(p, pw.id, tree.vertex(vi), o)});
      }
    }
  }
  return WhiteheadGraph(x, std::move(vertices), std::move(edges));
}

inline WhiteheadGraph wh_vertex(const LinePattern& p, const Word& v = Word()) {
  return wh_subtree(p, Subtree::single(v));
}

// Deletes v, keeping each incident edge as a loose edge ending on a fresh
// terminal.
inline WhiteheadGraph delete_vertex(const WhiteheadGraph& g, const ComponentId& v) {
  if (v.is_loose() || !g.has_vertex(v)) throw Error("vertex absent: " + v.to_string());
  std::vector<ComponentId> vertices;
  for (const ComponentId& u : g.vertices()) {
    if (u != v) vertices.push_back(u);
  }
  std::uint32_t next = g.next_loose();
  std::vector<WhEdge> edges = g.edges();
  for (WhEdge& e : edges) {
    if (e.a == v) e.a = {v.vertex, v.letter, next++};
    if (e.b == v) e.b = {v.vertex, v.letter, next++};
  }
  std::vector<TreeEdge> deleted = g.deleted();
  deleted.push_back(v.edge());
  return WhiteheadGraph(g.subtree(), std::move(vertices), std::move(edges), next, std::move(deleted));
}

// Joins (WH(A) -- v) and (WH(B) -- w) where v and w are the two orientations
// of the tree edge between A and B, pairing loose edges that carry the same
// line. The result is WH(A u B).
inline WhiteheadGraph splice(const WhiteheadGraph& ga, const WhiteheadGraph& gb) {
  // find the deleted frontier edge of A whose reverse was deleted from B
  std::optional<TreeEdge> joint;
  for (const TreeEdge& e : ga.deleted()) {
    if (std::binary_search(gb.deleted().begin(), gb.deleted().end(), TreeEdge{e.to(), e.letter.inverse()})) {
      if (joint) throw Error("splice: ambiguous joining edge");
      joint = e;
    }
  }
  if (!joint) throw Error("splice: deleted vertices do not share a tree edge");
  const TreeEdge ea = *joint;
  const TreeEdge eb{ea.to(), ea.letter.inverse()};

  // loose edges at the joint keyed by line, with their surviving endpoint
  auto collect = [](const WhiteheadGraph& g, const TreeEdge& joint_edge, std::vector<WhEdge>& rest) {
    std::multimap<Line, ComponentId> out;
    for (const WhEdge& e : g.edges()) {
      const bool a_at = e.a.is_loose() && e.a.edge() == joint_edge;
      const bool b_at = e.b.is_loose() && e.b.edge() == joint_edge;
      if (a_at && b_at) throw Error("splice: edge with both ends at the joint");
      if (a_at) {
        out.emplace(e.line, e.b);
      } else if (b_at) {
        out.emplace(e.line, e.a);
      } else {
        rest.push_back(e);
      }
    }
    return out;
  };
  std::vector<WhEdge> edges;
  auto side_a = collect(ga, ea, edges);
  auto side_b = collect(gb, eb, edges);
  std::vector<Line> lines_a, lines_b;
  for (const auto& [l, c] : side_a) lines_a.push_back(l);
  for (const auto& [l, c] : side_b) lines_b.push_back(l);
  if (lines_a != lines_b) throw Error("splice mismatch");
  for (auto ia = side_a.begin(), ib = side_b.begin(); ia != side_a.end(); ++ia, ++ib) {
    edges.push_back({ia->second, ib->second, ia->first});
  }

  std::vector<Word> verts = ga.subtree().vertices();
  for (const Word& v : gb.subtree().vertices()) {
    if (ga.subtree().contains(v)) throw Error("splice: subtrees overlap");
    verts.push_back(v);
  }
  std::vector<ComponentId> vertices = ga.vertices();
  vertices.insert(vertices.end(), gb.vertices().begin(), gb.vertices().end());
  std::vector<TreeEdge> deleted;
  for (const TreeEdge& e : ga.deleted()) {
    if (e != ea) deleted.push_back(e);
  }
  for (const TreeEdge& e : gb.deleted()) {
    if (e != eb) deleted.push_back(e);
  }
  return WhiteheadGraph(Subtree(std::move(verts)), std::move(vertices), std::move(edges),
                        std::max(ga.next_loose(), gb.next_loose()), std::move(deleted));
}

// Removes the edges carried by the given lines; others are unaffected.
inline WhiteheadGraph remove_lines(const WhiteheadGraph& g, const std::vector<Line>& lines) {
  std::set<Line> drop(lines.begin(), lines.end());
  std::vector<WhEdge> edges;
  for (const WhEdge& e : g.edges()) {
    if (!drop.count(e.line)) edges.push_back(e);
  }
  return WhiteheadGraph(g.subtree(), g.vertices(), std::move(edges), g.next_loose(), g.deleted());
}

struct Components {
  std::size_t count = 0;
  std::vector<std::vector<ComponentId>> parts;  // sorted, ordered by first member
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Component count over real vertices, optionally ignoring one vertex.
inline std::size_t count_components(const WhiteheadGraph& g, int skip = -1) {
  const std::size_t n = g.vertices().size();
  DisjointSets ds(n);
  std::size_t count = n - (skip >= 0 ? 1 : 0);
  for (const WhEdge& e : g.edges()) {
    if (e.a.is_loose() || e.b.is_loose()) continue;
    const int a = g.vertex_index(e.a);
    const int b = g.vertex_index(e.b);
    if (a < 0 || b < 0 || a == skip || b == skip) continue;
    if (ds.unite(static_cast<std::size_t>(a), static_cast<std::size_t>(b))) --count;
  }
  return count;
}

}  // namespace detail

// Loose terminals are not counted.
inline Components components(const WhiteheadGraph& g) {
  const auto& vs = g.vertices();
  detail::DisjointSets ds(vs.size());
  for (const WhEdge& e : g.edges()) {
    if (e.a.is_loose() || e.b.is_loose()) continue;
    const int a = g.vertex_index(e.a);
    const int b = g.vertex_index(e.b);
    if (a >= 0 && b >= 0) ds.unite(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  }
  std::map<std::size_t, std::vector<ComponentId>> groups;
  for (std::size_t i = 0; i < vs.size(); ++i) groups[ds.find(i)].push_back(vs[i]);
  Components out;
  out.count = groups.size();
  for (auto& [root, members] : groups) out.parts.push_back(std::move(members));
  return out;
}

// Vertices whose deletion increases the number of components.
inline std::vector<ComponentId> cut_vertices(const WhiteheadGraph& g) {
  const std::size_t base = detail::count_components(g);
  std::vector<ComponentId> out;
  for (std::size_t i = 0; i < g.vertices().size(); ++i) {
    if (detail::count_components(g, static_cast<int>(i)) > base) out.push_back(g.vertices()[i]);
  }
  return out;
}

// Symmetric matrix of parallel-edge counts between real vertices.
inline std::vector<std::vector<std::size_t>> multiplicity_matrix(const WhiteheadGraph& g) {
  const std::size_t n = g.vertices().size();
  std::vector<std::vector<std::size_t>> m(n, std::vector<std::size_t>(n, 0));
  for (const WhEdge& e : g.edges()) {
    if (e.a.is_loose() || e.b.is_loose()) continue;
    const int a = g.vertex_index(e.a);
    const int b = g.vertex_index(e.b);
    if (a < 0 || b < 0 || a == b) continue;
    ++m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    ++m[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
  }
  return m;
}

// Minimum over unordered pairs of distinct real vertices of the number of
// edges joining them.
inline std::size_t min_pair_multiplicity(const WhiteheadGraph& g) {
  auto m = multiplicity_matrix(g);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) best = std::min(best, m[i][j]);
  }
  return best == std::numeric_limits<std::size_t>::max() ? 0 : best;
}

// Global minimum edge cut (Stoer-Wagner) on a symmetric weight matrix; 0 when
// disconnected, max() for fewer than two vertices.
inline std::size_t min_cut(std::vector<std::vector<std::size_t>> w) {
  std::size_t n = w.size();
  if (n < 2) return std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  while (ids.size() > 1) {
    const std::size_t k = ids.size();
    std::vector<std::size_t> weight(k, 0);
    std::vector<bool> added(k, false);
    std::size_t prev = 0, last = 0;
    for (std::size_t step = 0; step < k; ++step) {
      std::size_t sel = k;
      for (std::size_t i = 0; i < k; ++i) {
        if (!added[i] && (sel == k || weight[i] > weight[sel])) sel = i;
      }
      added[sel] = true;
      if (step == k - 1) {
        best = std::min(best, weight[sel]);
        last = sel;
      } else {
        prev = sel;
        for (std::size_t i = 0; i < k; ++i) {
          if (!added[i]) weight[i] += w[ids[sel]][ids[i]];
        }
      }
    }
    // merge last into prev
    for (std::size_t i = 0; i < k; ++i) {
      w[ids[prev]][ids[i]] += w[ids[last]][ids[i]];
      w[ids[i]][ids[prev]] = w[ids[prev]][ids[i]];
    }
    ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(last));
  }
  return best;
}

inline std::size_t edge_connectivity(const WhiteheadGraph& g) { return min_cut(multiplicity_matrix(g)); }

inline std::string to_dot(const LinePattern& p, const WhiteheadGraph& g) {
  static const char* kColors[] = {"purple", "darkgreen", "orange", "blue", "red", "brown", "black"};
  std::ostringstream out;
  out << "// freecut-dot/1\n";
  out << "graph WH {\n";
  out << "  node [shape=circle];\n";
  for (const ComponentId& v : g.vertices()) out << "  \"" << v.to_string() << "\";\n";
  for (const WhEdge& e : g.edges()) {
    out << "  \"" << e.a.to_string() << "\" -- \"" << e.b.to_string() << "\" [label=\""
        << line_to_string(p, e.line) << "\", color=" << kColors[e.line.word_id % 7] << "];\n";
  }
  out << "}\n";
  return out.str();
}

inline nlohmann::json to_json(const LinePattern& p, const WhiteheadGraph& g) {
  nlohmann::json j;
  j["format"] = "freecut-wh/1";
  j["subtree"] = g.subtree().to_strings();
  auto& vs = j["vertices"] = nlohmann::json::array();
  for (const ComponentId& v : g.vertices()) vs.push_back(v.to_string());
  auto& es = j["edges"] = nlohmann::json::array();
  for (const WhEdge& e : g.edges()) {
    es.push_back({{"u", e.a.to_string()}, {"v", e.b.to_string()}, {"word", e.line.word_id},
                  {"line", line_to_string(p, e.line)}});
  }
  return j;
}

}  // namespace freecut

#endif  // FREECUT_WHITEHEAD_HPP
