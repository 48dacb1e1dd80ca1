#ifndef FREECUT_CUTSETS_HPP
#define FREECUT_CUTSETS_HPP

// Cut sets of the decomposition space: the fullness/multiplicity certificate,
// bounded exhaustive search over line sets, and truncated hull checks for
// small sets of boundary points.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "freecut/cayley.hpp"
#include "freecut/error.hpp"
#include "freecut/parallel.hpp"
#include "freecut/pattern.hpp"
#include "freecut/ray.hpp"
#include "freecut/whitehead.hpp"
#include "freecut/word.hpp"

namespace freecut {

inline constexpr std::size_t kInfiniteComponents = std::numeric_limits<std::size_t>::max();

inline std::string count_to_string(std::size_t c) {
  return c == kInfiniteComponents ? std::string("infinite") : std::to_string(c);
}

// ---------------------------------------------------------------------------
// Certificate

struct Certificate {
  bool has_4_full_word = false;
  std::size_t min_multiplicity = 0;
  std::optional<std::size_t> certified_lower_bound;
};

inline Certificate certify_lower_bound(const LinePattern& p) {
  Certificate c;
  for (const PatternWord& pw : p.words()) {
    if (is_k_full(pw.word, 4, p.rank())) {
      c.has_4_full_word = true;
      break;
    }
  }
  c.min_multiplicity = min_pair_multiplicity(wh_vertex(p));
  if (c.has_4_full_word) c.certified_lower_bound = c.min_multiplicity;
  return c;
}

// ---------------------------------------------------------------------------
// Single lines

// Number of components of WH(l) for a line l of word `id`, where the vertices
// are the infinitely many branches hanging off l. The graph is periodic under
// the stabilizer of l, so it is computed on one period with integer shifts on
// the edges; a quotient component whose cycles have shifts generating dZ lifts
// to d components (infinitely many when d = 0).
inline std::size_t line_complement_components(const LinePattern& p, std::uint32_t id) {
  const unsigned deg = 2 * p.rank();
  const std::size_t n = p.word(id).size();
  auto g = [&](std::size_t i) { return p.at(id, i % n); };
  const std::size_t nodes = n * deg;
  std::vector<std::size_t> parent(nodes);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<long long> pot(nodes, 0);  // shift relative to parent
  std::vector<long long> period(nodes, 0);

  auto find = [&](std::size_t x) {
    std::vector<std::size_t> path;
    while (parent[x] != x) {
      path.push_back(x);
      x = parent[x];
    }
    // compress, accumulating shifts from the top down
    for (std::size_t k = path.size(); k-- > 0;) {
      const std::size_t y = path[k];
      if (parent[y] != x) pot[y] += pot[parent[y]];
      parent[y] = x;
    }
    return x;
  };
  auto unite = [&](std::size_t u, std::size_t v, long long d) {
    const std::size_t ru = find(u);
    const std::size_t rv = find(v);
    const long long pu = u == ru ? 0 : pot[u];
    const long long pv = v == rv ? 0 : pot[v];
    if (ru == rv) {
      const long long cycle = pu + d - pv;
      period[ru] = std::gcd(period[ru], cycle < 0 ? -cycle : cycle);
      return;
    }
    parent[rv] = ru;
    pot[rv] = pu + d - pv;
    period[ru] = std::gcd(period[ru], period[rv]);
  };

  for (std::size_t s = 0; s < n; ++s) {
    const Letter fwd = g(s);
    const Letter bwd = g(s + n - 1).inverse();
    for (const PatternWord& pw : p.words()) {
      const std::size_t len = pw.word.size();
      for (std::size_t o = 0; o < len; ++o) {
        if (pw.id == id && o == s) continue;
        const Letter f = forward_letter(p, pw.id, o);
        const Letter b = backward_letter(p, pw.id, o);
        // count each crossing line once, at the first vertex it shares with l
        if (f == bwd || b == bwd) continue;
        std::size_t t = s;
        Letter entry = b;
        Letter exit = f;
        const std::size_t guard = s + n * (len + 2);
        if (f == fwd || b == fwd) {
          const bool along = f == fwd;
          entry = along ? b : f;
          std::size_t off = o;
          for (;;) {
            ++t;
            off = along ? (off + 1) % len : (off + len - 1) % len;
            const Letter next = along ? forward_letter(p, pw.id, off) : backward_letter(p, pw.id, off);
            if (next != g(t)) {
              exit = next;
              break;
            }
            if (t > guard) throw Error("line_complement_components: lines coincide");
          }
        }
        unite(s * deg + entry.code(), (t % n) * deg + exit.code(), static_cast<long long>(t / n));
      }
    }
  }

  std::size_t total = 0;
  for (std::size_t s = 0; s < n; ++s) {
    for (unsigned c = 0; c < deg; ++c) {
      const Letter l = Letter::from_code(c);
      if (l == g(s) || l == g(s + n - 1).inverse()) continue;
      const std::size_t x = s * deg + c;
      if (find(x) != x) continue;
      if (period[x] == 0) return kInfiniteComponents;
      total += static_cast<std::size_t>(period[x]);
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Candidate evaluation

struct CutSetReport {
  std::vector<Line> lines;  // sorted, distinct
  PrunedCore pruned_core;
  std::size_t component_count = 0;
  std::optional<bool> minimal;  // unset when the set is too large to re-test
};

struct Evaluation {
  PrunedCore core;
  std::size_t component_count = 0;
};

inline constexpr std::size_t kMaxMinimalityTest = 12;

// Evaluates line sets of one pattern. Pruning is applied only when the vertex
// graph is connected without cut vertices; otherwise the full core is used.
// A single line is evaluated on its whole hull (the line itself); its reported
// core is its base vertex.
class CutEvaluator {
 public:
  explicit CutEvaluator(const LinePattern& p) : p_(&p) {
    auto g = wh_vertex(p);
    prunes_ = components(g).count == 1 && cut_vertices(g).empty();
    for (const PatternWord& pw : p.words()) single_.push_back(line_complement_components(p, pw.id));
  }

  const LinePattern& pattern() const { return *p_; }
  bool prunes() const { return prunes_; }
  std::size_t single_line(std::uint32_t id) const { return single_.at(id); }

  Evaluation evaluate(const std::vector<Line>& sorted_lines) const {
    if (sorted_lines.empty()) throw Error("empty candidate");
    if (sorted_lines.size() == 1) {
      const Line& l = sorted_lines.front();
      return {PrunedCore{CoreKind::kVertex, Subtree::single(l.base), std::nullopt}, single_line(l.word_id)};
    }
    Subtree core = hull_core(*p_, sorted_lines);
    PrunedCore pc;
    if (prunes_) {
      pc = prune_core(*p_, core, sorted_lines);
    } else {
      pc = PrunedCore{core.size() == 1 ? CoreKind::kVertex : CoreKind::kTree, core, std::nullopt};
    }
    const std::size_t count = components(remove_lines(wh_subtree(*p_, pc.subtree), sorted_lines)).count;
    return {std::move(pc), count};
  }

  std::size_t count(const std::vector<Line>& sorted_lines) const { return evaluate(sorted_lines).component_count; }

  // True when no nonempty proper subset disconnects; nullopt when too large.
  std::optional<bool> is_minimal(const std::vector<Line>& sorted_lines) const {
    const std::size_t k = sorted_lines.size();
    if (k > kMaxMinimalityTest) return std::nullopt;
    for (std::uint32_t mask = 1; mask + 1 < (1U << k); ++mask) {
      std::vector<Line> sub;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask & (1U << i)) sub.push_back(sorted_lines[i]);
      }
      if (count(sub) >= 2) return false;
    }
    return true;
  }

  CutSetReport report(const std::vector<Line>& sorted_lines) const {
    Evaluation e = evaluate(sorted_lines);
    return {sorted_lines, std::move(e.core), e.component_count, is_minimal(sorted_lines)};
  }

 private:
  const LinePattern* p_;
  bool prunes_ = false;
  std::vector<std::size_t> single_;
};

inline std::vector<Line> canonical_lines(std::vector<Line> lines) {
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  return lines;
}

// All lines through one edge, with the edge as pruned core.
inline CutSetReport edge_cut_set(const LinePattern& p, const TreeEdge& edge) {
  const TreeEdge e = edge.outward();
  std::vector<Line> lines = lines_through_edge(p, e.from, e.letter);
  if (lines.empty()) throw Error("no lines through edge " + e.to_string());
  Subtree support(std::vector<Word>{e.from, e.to()});
  CutSetReport r;
  r.lines = lines;
  r.pruned_core = PrunedCore{CoreKind::kEdge, support, e};
  r.component_count = components(remove_lines(wh_subtree(p, support), lines)).count;
  if (lines.size() <= kMaxMinimalityTest) r.minimal = CutEvaluator(p).is_minimal(lines);
  return r;
}

// ---------------------------------------------------------------------------
// Search

struct CutSearchOptions {
  std::size_t max_size = 2;
  unsigned radius = 2;
  std::uint64_t max_candidates = 4'000'000'000ULL;
  unsigned threads = 1;
  bool fast = true;  // settle pairs by connectivity bounds where possible
};

struct CutSearchResult {
  std::vector<CutSetReport> reports;  // sorted by size, then lines
  bool truncated = false;
  std::uint64_t candidates = 0;       // candidates examined
  std::uint64_t settled_by_bound = 0;  // pairs shown connected without building a core
  std::size_t lines_considered = 0;
  std::size_t edge_sets = 0;  // edge line sets within the size limit
  unsigned radius = 0;
  std::size_t max_size = 0;
};

inline constexpr unsigned kMaxSearchRadius = 6;
inline constexpr std::size_t kMaxSearchSize = 8;

namespace detail {

struct SupportStats {
  bool connected = false;
  std::size_t connectivity = 0;
};

inline SupportStats support_stats(const LinePattern& p, const Subtree& x) {
  auto g = wh_subtree(p, x);
  SupportStats s;
  s.connected = components(g).count == 1;
  s.connectivity = s.connected ? edge_connectivity(g) : 0;
  return s;
}

inline bool survives(const SupportStats& s, std::size_t removed) { return s.connected && removed < s.connectivity; }

// Ball-local data for classifying pairs of lines without building hulls.
class PairClassifier {
 public:
  PairClassifier(const LinePattern& p, const Subtree& ball, const std::vector<Line>& lines)
      : rank_(p.rank()), lines_(lines.size()) {
    const auto& vs = ball.vertices();
    n_ = vs.size();
    if (n_ > 64) throw Error("ball too large for pair classification");
    std::unordered_map<Line, std::size_t, LineHash> index;
    index.reserve(lines.size() * 2);
    for (std::size_t i = 0; i < lines.size(); ++i) index.emplace(lines[i], i);
    for (std::size_t k = 0; k < n_; ++k) {
      for (const PatternWord& pw : p.words()) {
        for (std::size_t o = 0; o < pw.word.size(); ++o) {
          const std::size_t i = index.at(line_through(p, pw.id, vs[k], o));
          lines_[i].mask |= std::uint64_t{1} << k;
          lines_[i].at.push_back({static_cast<std::uint8_t>(k),
                                  static_cast<std::uint8_t>(forward_letter(p, pw.id, o).code()),
                                  static_cast<std::uint8_t>(backward_letter(p, pw.id, o).code())});
        }
      }
    }
    dist_.assign(n_ * n_, 0);
    bridge_type_.assign(n_ * n_, 0);
    std::map<Word, std::size_t> types;
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = 0; b < n_; ++b) {
        const std::size_t c = common_prefix(vs[a].letters(), vs[b].letters());
        dist_[a * n_ + b] = static_cast<std::uint8_t>(vs[a].size() + vs[b].size() - 2 * c);
        if (a == b) continue;
        Word beta = vs[a].inverse() * vs[b];
        auto [it, fresh] = types.emplace(beta, bridge_stats_.size());
        if (fresh) bridge_stats_.push_back(support_stats(p, convex_hull({Word(), beta})));
        bridge_type_[a * n_ + b] = static_cast<std::uint32_t>(it->second);
      }
    }
    vertex_stats_ = support_stats(p, Subtree::single(Word()));
    edge_stats_ = SupportStats{true, std::numeric_limits<std::size_t>::max()};
    for (unsigned c = 0; c < 2 * rank_; ++c) {
      auto s = support_stats(p, Subtree(std::vector<Word>{Word(), Word().times(Letter::from_code(c))}));
      edge_stats_.connected = edge_stats_.connected && s.connected;
      edge_stats_.connectivity = std::min(edge_stats_.connectivity, s.connectivity);
    }
  }

  // True when the pair is certainly not a cut set: its support graph keeps a
  // connectivity larger than the two removed lines.
  bool pair_connected(std::size_t i, std::size_t j) const {
    const LineInfo& x = lines_[i];
    const LineInfo& y = lines_[j];
    const std::uint64_t both = x.mask & y.mask;
    const int shared = std::popcount(both);
    if (shared >= 2) return survives(edge_stats_, 2);
    if (shared == 1) {
      const std::uint8_t v = static_cast<std::uint8_t>(std::countr_zero(both));
      const Visit& a = find_visit(x, v);
      const Visit& b = find_visit(y, v);
      const bool common = a.f == b.f || a.f == b.b || a.b == b.f || a.b == b.b;
      return survives(common ? edge_stats_ : vertex_stats_, 2);
    }
    // disjoint: the bridge runs between the nearest vertices, inside the ball
    const std::uint8_t probe = y.at.front().vertex;
    std::uint8_t u1 = x.at.front().vertex;
    for (const Visit& a : x.at) {
      if (dist_[a.vertex * n_ + probe] < dist_[u1 * n_ + probe]) u1 = a.vertex;
    }
    std::uint8_t u2 = y.at.front().vertex;
    for (const Visit& b : y.at) {
      if (dist_[b.vertex * n_ + u1] < dist_[u2 * n_ + u1]) u2 = b.vertex;
    }
    return survives(bridge_stats_[bridge_type_[u1 * n_ + u2]], 2);
  }

 private:
  struct Visit {
    std::uint8_t vertex;
    std::uint8_t f;
    std::uint8_t b;
  };
  struct LineInfo {
    std::uint64_t mask = 0;
    std::vector<Visit> at;
  };

  static const Visit& find_visit(const LineInfo& l, std::uint8_t v) {
    for (const Visit& a : l.at) {
      if (a.vertex == v) return a;
    }
    throw Error("pair classifier: vertex not on line");
  }

  unsigned rank_;
  std::size_t n_ = 0;
  std::vector<LineInfo> lines_;
  std::vector<std::uint8_t> dist_;
  std::vector<std::uint32_t> bridge_type_;
  std::vector<SupportStats> bridge_stats_;
  SupportStats vertex_stats_;
  SupportStats edge_stats_;
};

inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  BigInt r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r = r * (n - i) / (i + 1);
  }
  return r > cap ? cap : static_cast<std::uint64_t>(r);
}

// Advances a sorted index combination; false after the last one.
inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Every set of at most max_size lines meeting the ball of the given radius,
// plus the set of all lines through each edge of the ball when it is within
// the size limit. Sets whose complement graph has at least two components
// are reported. Candidates are taken in order (size, then lexicographic) and
// the search stops after max_candidates, setting `truncated`.
inline CutSearchResult find_cut_sets(const LinePattern& p, const CutSearchOptions& opt) {
  if (opt.radius > kMaxSearchRadius) throw Error("radius exceeds " + std::to_string(kMaxSearchRadius));
  if (opt.max_size > kMaxSearchSize) throw Error("max_size exceeds " + std::to_string(kMaxSearchSize));
  CutSearchResult res;
  res.radius = opt.radius;
  res.max_size = opt.max_size;
  if (opt.max_size == 0) return res;

  const Subtree b = ball(p.rank(), opt.radius);
  const std::vector<Line> lines = lines_meeting(p, b);
  res.lines_considered = lines.size();
  const CutEvaluator eval(p);
  const std::size_t n = lines.size();
  std::uint64_t budget = opt.max_candidates;
  std::set<std::vector<Line>> hits;
  std::set<std::vector<Line>> seen_edge_sets;

  auto take = [&](std::uint64_t want) {
    const std::uint64_t got = std::min(want, budget);
    budget -= got;
    res.candidates += got;
    if (got < want) res.truncated = true;
    return got;
  };

  for (std::size_t k = 1; k <= opt.max_size && k <= n && !res.truncated; ++k) {
    const std::uint64_t total = detail::binomial_capped(n, k, std::numeric_limits<std::uint64_t>::max());
    const std::uint64_t allowed = take(total);
    if (k == 1) {
      for (std::size_t i = 0; i < allowed; ++i) {
        if (eval.single_line(lines[i].word_id) >= 2) hits.insert({lines[i]});
      }
      continue;
    }
    if (k == 2 && opt.fast && eval.prunes()) {
      detail::PairClassifier pc(p, b, lines);
      // row i holds pairs (i, j > i); rows are cut short at the budget
      std::vector<std::size_t> row_end(n, 0);
      std::uint64_t left = allowed;
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t row = n - 1 - i;
        const std::uint64_t use = std::min(row, left);
        row_end[i] = i + 1 + static_cast<std::size_t>(use);
        left -= use;
      }
      std::vector<std::vector<std::vector<Line>>> found(n);
      std::vector<std::uint64_t> settled(n, 0);
      parallel_for(
          n, opt.threads,
          [&](std::size_t i) {
            for (std::size_t j = i + 1; j < row_end[i]; ++j) {
              if (pc.pair_connected(i, j)) {
                ++settled[i];
                continue;
              }
              std::vector<Line> cand{lines[i], lines[j]};
              if (eval.count(cand) >= 2) found[i].push_back(std::move(cand));
            }
          },
          16);
      for (std::size_t i = 0; i < n; ++i) {
        res.settled_by_bound += settled[i];
        for (auto& c : found[i]) hits.insert(std::move(c));
      }
      continue;
    }
    // general enumeration in batches
    std::vector<std::size_t> comb(k);
    std::iota(comb.begin(), comb.end(), 0);
    std::uint64_t remaining = allowed;
    bool more = remaining > 0;
    while (more) {
      std::vector<std::vector<Line>> batch;
      while (more && batch.size() < 4096) {
        std::vector<Line> cand;
        for (std::size_t idx : comb) cand.push_back(lines[idx]);
        batch.push_back(std::move(cand));
        more = --remaining > 0 && detail::next_combination(comb, n);
      }
      std::vector<char> cut(batch.size(), 0);
      parallel_for(batch.size(), opt.threads, [&](std::size_t t) { cut[t] = eval.count(batch[t]) >= 2; }, 8);
      for (std::size_t t = 0; t < batch.size(); ++t) {
        if (cut[t]) hits.insert(std::move(batch[t]));
      }
    }
  }

  if (!res.truncated) {
    for (const TreeEdge& e : b.edges()) {
      std::vector<Line> ls = lines_through_edge(p, e.from, e.letter);
      if (ls.empty() || ls.size() > opt.max_size) continue;
      if (!seen_edge_sets.insert(ls).second) continue;
      ++res.edge_sets;
      if (take(1) == 0) break;
      if (eval.count(ls) >= 2) hits.insert(std::move(ls));
    }
  }

  std::vector<std::vector<Line>> ordered(hits.begin(), hits.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const std::vector<Line>& x, const std::vector<Line>& y) { return x.size() < y.size(); });
  res.reports.resize(ordered.size());
  parallel_for(ordered.size(), opt.threads, [&](std::size_t t) { res.reports[t] = eval.report(ordered[t]); });
  return res;
}

inline std::vector<CutSetReport> find_cut_sets(const LinePattern& p, std::size_t max_size, unsigned radius) {
  CutSearchOptions opt;
  opt.max_size = max_size;
  opt.radius = radius;
  return find_cut_sets(p, opt).reports;
}

// ---------------------------------------------------------------------------
// Boundary points

using BoundaryPoint = std::variant<Line, Ray>;

// A ray whose period is a pattern word is the endpoint of a line; it is
// returned as that line.
inline std::optional<Line> line_of_ray(const LinePattern& p, const Ray& r) {
  const Word& per = r.period();
  const CyclicWord c = canonical_pattern_word(CyclicWord(per));
  for (const PatternWord& pw : p.words()) {
    if (pw.word != c) continue;
    const std::size_t len = pw.word.size();
    for (std::size_t o = 0; o < len; ++o) {
      Word rot = Word::from_reduced(rotate_letters(pw.word.letters(), o));
      if (rot == per || rot.inverse() == per) return line_through(p, pw.id, r.prefix(), o);
    }
  }
  return std::nullopt;
}

// "prefix(period)", e.g. "b(a)" or "(ab)".
inline Ray parse_ray(const std::string& text, unsigned rank) {
  const auto open = text.find('(');
  if (open == std::string::npos || text.size() < open + 3 || text.back() != ')') {
    throw Error("bad ray: " + text);
  }
  const Word prefix = Word::parse(text.substr(0, open), rank);
  const Word period = Word::parse(text.substr(open + 1, text.size() - open - 2), rank);
  if (period.empty()) throw Error("bad ray: " + text);
  return Ray(prefix, period);
}

// "id:base:direction" as printed for lines, or a ray.
inline BoundaryPoint parse_boundary_point(const LinePattern& p, const std::string& text) {
  if (text.find('(') != std::string::npos) return parse_ray(text, p.rank());
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw Error("bad boundary point: " + text);
  const std::string id_text = text.substr(0, c1);
  if (id_text.empty() || id_text.find_first_not_of("0123456789") != std::string::npos) {
    throw Error("bad line id: " + text);
  }
  const unsigned long id = std::stoul(id_text);
  if (id >= p.size()) throw Error("no pattern word " + id_text);
  const Word base = Word::parse(text.substr(c1 + 1, c2 - c1 - 1), p.rank());
  const std::uint32_t wid = static_cast<std::uint32_t>(id);
  for (std::size_t o = 0; o < p.word(wid).size(); ++o) {
    const Line l = line_through(p, wid, base, o);
    if (line_to_string(p, l) == text) return l;
  }
  throw Error("no such line: " + text);
}

struct BoundaryCheck {
  std::size_t depth = 0;
  std::size_t component_count = 0;  // at depth
  std::size_t next_count = 0;       // at depth + 2
  bool stabilized = false;
  std::vector<Line> lines;  // good points, as lines
  std::vector<Ray> rays;    // all preimage points
};

namespace detail {

struct BoundaryInput {
  std::vector<Line> lines;
  std::vector<Ray> rays;
  std::size_t min_depth = 0;
  std::size_t branch_depth = 0;
};

inline BoundaryInput boundary_input(const LinePattern& p, const std::vector<BoundaryPoint>& points) {
  if (points.empty() || points.size() > 4) throw Error("boundary check takes 1 to 4 points");
  BoundaryInput in;
  std::vector<Ray> bad;
  for (const BoundaryPoint& pt : points) {
    if (const Line* l = std::get_if<Line>(&pt)) {
      in.lines.push_back(*l);
    } else if (auto l2 = line_of_ray(p, std::get<Ray>(pt))) {
      in.lines.push_back(*l2);
    } else {
      bad.push_back(std::get<Ray>(pt));
    }
  }
  if (in.lines.empty() && bad.size() == 1) throw Error("a single bad point is not supported");
  std::sort(in.lines.begin(), in.lines.end());
  if (std::adjacent_find(in.lines.begin(), in.lines.end()) != in.lines.end()) throw Error("duplicate point");
  for (const Line& l : in.lines) {
    auto [x, y] = line_endpoints(p, l);
    in.rays.push_back(x);
    in.rays.push_back(y);
  }
  in.rays.insert(in.rays.end(), bad.begin(), bad.end());
  for (std::size_t i = 0; i < in.rays.size(); ++i) {
    const Ray& r = in.rays[i];
    in.min_depth = std::max(in.min_depth, r.prefix().size() + r.period().size());
    for (std::size_t j = i + 1; j < in.rays.size(); ++j) {
      if (in.rays[i] == in.rays[j]) throw Error("duplicate point");
      const std::size_t c = ray_common_prefix(in.rays[i], in.rays[j]);
      in.branch_depth = std::max(in.branch_depth, c);
      in.min_depth = std::max(in.min_depth, c + 1);
    }
  }
  return in;
}

inline std::size_t truncated_count(const LinePattern& p, const BoundaryInput& in, std::size_t depth) {
  std::vector<Word> ends;
  for (const Ray& r : in.rays) ends.push_back(r.vertex_at(depth));
  return components(remove_lines(wh_subtree(p, convex_hull(ends)), in.lines)).count;
}

}  // namespace detail

// Smallest depth at which every ray has entered its period and all rays have
// separated.
inline std::size_t boundary_min_depth(const LinePattern& p, const std::vector<BoundaryPoint>& points) {
  return detail::boundary_input(p, points).min_depth;
}

inline std::size_t default_boundary_depth(const LinePattern& p, const std::vector<BoundaryPoint>& points) {
  auto in = detail::boundary_input(p, points);
  return std::max(in.min_depth, 2 * p.max_word_length() + in.branch_depth + 4);
}

// Components of the complement of the points, read off the Whitehead graph of
// their hull cut off at `depth` from the identity. Each place where a ray
// leaves the truncated hull is a vertex of its own. The count is repeated at
// depth + 2.
inline BoundaryCheck boundary_cut_check(const LinePattern& p, const std::vector<BoundaryPoint>& points,
                                        std::size_t depth) {
  auto in = detail::boundary_input(p, points);
  if (depth < in.min_depth) {
    throw Error("depth too small (need at least " + std::to_string(in.min_depth) + ")");
  }
  BoundaryCheck out;
  out.depth = depth;
  out.component_count = detail::truncated_count(p, in, depth);
  out.next_count = detail::truncated_count(p, in, depth + 2);
  out.stabilized = out.component_count == out.next_count;
  out.lines = in.lines;
  out.rays = in.rays;
  return out;
}

// ---------------------------------------------------------------------------
// Output

inline nlohmann::json to_json(const LinePattern& p, const Certificate& c) {
  nlohmann::json j;
  j["has_4_full_word"] = c.has_4_full_word;
  j["min_multiplicity"] = c.min_multiplicity;
  j["certified_lower_bound"] = c.certified_lower_bound ? nlohmann::json(*c.certified_lower_bound) : nlohmann::json();
  (void)p;
  return j;
}

inline nlohmann::json to_json(const LinePattern& p, const CutSetReport& r) {
  nlohmann::json j;
  auto& ls = j["lines"] = nlohmann::json::array();
  for (const Line& l : r.lines) ls.push_back(line_to_string(p, l));
  j["size"] = r.lines.size();
  j["core_kind"] = to_string(r.pruned_core.kind);
  j["core"] = r.pruned_core.subtree.to_strings();
  if (r.pruned_core.retained_edge) j["edge"] = r.pruned_core.retained_edge->to_string();
  if (r.component_count == kInfiniteComponents) {
    j["components"] = "infinite";
  } else {
    j["components"] = r.component_count;
  }
  j["minimal"] = r.minimal ? nlohmann::json(*r.minimal) : nlohmann::json("untested");
  return j;
}

inline nlohmann::json to_json(const LinePattern& p, const BoundaryCheck& b) {
  nlohmann::json j;
  auto& ls = j["lines"] = nlohmann::json::array();
  for (const Line& l : b.lines) ls.push_back(line_to_string(p, l));
  auto& rs = j["rays"] = nlohmann::json::array();
  for (const Ray& r : b.rays) rs.push_back(r.to_string());
  j["depth"] = b.depth;
  j["components"] = b.component_count;
  j["components_next"] = b.next_count;
  j["stabilized"] = b.stabilized;
  return j;
}

}  // namespace freecut

#endif  // FREECUT_CUTSETS_HPP
