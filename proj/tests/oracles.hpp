#ifndef FREECUT_TESTS_ORACLES_HPP
#define FREECUT_TESTS_ORACLES_HPP

// Brute-force reference implementations used only by the tests. They work on
// plain strings in the a/A/b/B format and share no code paths with the
// library beyond that format.

#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

inline char inv(char c) { return std::islower(static_cast<unsigned char>(c)) ? static_cast<char>(std::toupper(c)) : static_cast<char>(std::tolower(c)); }

inline std::string alphabet(unsigned rank) {
  std::string s;
  for (unsigned i = 0; i < rank; ++i) {
    s.push_back(static_cast<char>('a' + i));
    s.push_back(static_cast<char>('A' + i));
  }
  return s;
}

inline bool reduced(const std::string& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == inv(w[i - 1])) return false;
  }
  return true;
}

inline bool cyclically_reduced(const std::string& w) {
  return !w.empty() && reduced(w) && w.front() != inv(w.back());
}

// Every string over the 2r letters of length n, filtered to reduced ones.
inline std::vector<std::string> all_reduced(unsigned rank, unsigned n) {
  const std::string a = alphabet(rank);
  std::vector<std::string> out;
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    std::string w;
    for (std::size_t i : idx) w.push_back(a[i]);
    if (reduced(w)) out.push_back(w);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++idx[k] < a.size()) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
    if (n == 0) return out;
  }
}

// Strip matching inverse letters from both ends until none remain.
inline std::string cyclic_core(std::string w) {
  while (w.size() >= 2 && w.front() == inv(w.back())) w = w.substr(1, w.size() - 2);
  return w;
}

inline std::string invert(const std::string& w) {
  std::string out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inv(*it));
  return out;
}

inline std::string free_reduce(const std::string& raw) {
  std::string out;
  for (char c : raw) {
    if (!out.empty() && out.back() == inv(c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

// All rotations of w and of its inverse; the least is the canonical pattern
// word (with the library's letter order a < A < b < B ...).
inline int code(char c) {
  return std::islower(static_cast<unsigned char>(c)) ? 2 * (c - 'a') : 2 * (c - 'A') + 1;
}

inline bool less_word(const std::string& x, const std::string& y) {
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i] != y[i]) return code(x[i]) < code(y[i]);
  }
  return x.size() < y.size();
}

inline std::string least_rotation(const std::string& w) {
  std::string best = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::string r = w.substr(i) + w.substr(0, i);
    if (less_word(r, best)) best = r;
  }
  return best;
}

inline bool is_proper_power(const std::string& w) {
  for (std::size_t p = 1; p < w.size(); ++p) {
    if (w.size() % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < w.size() && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return true;
  }
  return false;
}

// Occurrences of s starting at each cyclic position of w.
inline std::size_t cyclic_count(const std::string& w, const std::string& s) {
  std::size_t c = 0;
  for (std::size_t p = 0; p < w.size(); ++p) {
    bool ok = true;
    for (std::size_t i = 0; i < s.size() && ok; ++i) ok = w[(p + i) % w.size()] == s[i];
    if (ok) ++c;
  }
  return c;
}

inline bool k_full(const std::string& w, unsigned k, unsigned rank) {
  for (const std::string& s : all_reduced(rank, k)) {
    if (cyclic_count(w, s) == 0) return false;
  }
  return true;
}

// Whitehead graph at a vertex by the xy -> {x^-1, y} rule: unordered pair of
// letters -> number of edges.
inline std::map<std::pair<char, char>, std::size_t> wh_vertex_pairs(const std::vector<std::string>& words) {
  std::map<std::pair<char, char>, std::size_t> out;
  for (const std::string& w : words) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      char x = inv(w[i]);
      char y = w[(i + 1) % w.size()];
      if (code(y) < code(x)) std::swap(x, y);
      ++out[{x, y}];
    }
  }
  return out;
}


inline std::string reduce_append(std::string v, char c) {
  if (!v.empty() && v.back() == inv(c)) {
    v.pop_back();
  } else {
    v.push_back(c);
  }
  return v;
}

// Vertices of the line through v reading the cyclic word g from offset o,
// walked k steps in each direction, in order along the line.
inline std::vector<std::string> line_window(const std::string& v, const std::string& g, std::size_t o, std::size_t k) {
  const std::size_t n = g.size();
  std::vector<std::string> back;
  std::string cur = v;
  std::size_t off = o;
  for (std::size_t i = 0; i < k; ++i) {
    off = (off + n - 1) % n;
    cur = reduce_append(cur, inv(g[off]));
    back.push_back(cur);
  }
  std::vector<std::string> out(back.rbegin(), back.rend());
  out.push_back(v);
  cur = v;
  off = o;
  for (std::size_t i = 0; i < k; ++i) {
    cur = reduce_append(cur, g[off]);
    off = (off + 1) % n;
    out.push_back(cur);
  }
  return out;
}

inline std::size_t distance(const std::string& u, const std::string& v) {
  return free_reduce(invert(u) + v).size();
}

// Vertices on the geodesic between u and v.
inline std::set<std::string> geodesic(const std::string& u, const std::string& v) {
  std::size_t c = 0;
  while (c < u.size() && c < v.size() && u[c] == v[c]) ++c;
  std::set<std::string> out;
  for (std::size_t k = c; k <= u.size(); ++k) out.insert(u.substr(0, k));
  for (std::size_t k = c; k <= v.size(); ++k) out.insert(v.substr(0, k));
  return out;
}

inline std::set<std::string> hull(const std::vector<std::string>& pts) {
  std::set<std::string> out;
  for (const std::string& q : pts) {
    auto g = geodesic(pts.front(), q);
    out.insert(g.begin(), g.end());
  }
  return out;
}

// Branch points of the hull of two lines given as long windows: the ends of
// their common segment, or the ends of the bridge between them.
inline std::vector<std::string> junctions(const std::vector<std::string>& x, const std::vector<std::string>& y) {
  std::set<std::string> sy(y.begin(), y.end());
  std::vector<std::string> common;
  for (const std::string& v : x) {
    if (sy.count(v)) common.push_back(v);
  }
  if (!common.empty()) return {common.front(), common.back()};
  std::size_t best = SIZE_MAX;
  std::pair<std::string, std::string> bridge;
  for (const std::string& u : x) {
    for (const std::string& v : y) {
      const std::size_t d = distance(u, v);
      if (d < best) {
        best = d;
        bridge = {u, v};
      }
    }
  }
  return {bridge.first, bridge.second};
}

}  // namespace oracle

#endif  // FREECUT_TESTS_ORACLES_HPP
