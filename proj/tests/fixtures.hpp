#ifndef FREECUT_TESTS_FIXTURES_HPP
#define FREECUT_TESTS_FIXTURES_HPP

// Random instances shared by the unit tests and the acceptance checks.

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "freecut/whitehead.hpp"

namespace fixtures {

using namespace freecut;

inline LinePattern random_pattern(Rng& rng, std::size_t words, std::size_t min_len, std::size_t max_len) {
  std::vector<Word> raw;
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  while (raw.size() < words) {
    Word w = random_reduced_word(2, len(rng), rng);
    if (!cyclic_reduce(w).core.empty()) raw.push_back(w);
  }
  return induced_pattern(raw, 2);
}

// Random subtree grown from root by attaching neighbours.
inline Subtree random_subtree(Rng& rng, const Word& root, std::size_t size, const std::set<Word>& avoid = {}) {
  std::vector<Word> verts{root};
  std::set<Word> have{root};
  for (int tries = 0; verts.size() < size && tries < 100; ++tries) {
    const Word& v = verts[std::uniform_int_distribution<std::size_t>(0, verts.size() - 1)(rng)];
    Word u = v.times(Letter::from_code(std::uniform_int_distribution<unsigned>(0, 3)(rng)));
    if (have.count(u) || avoid.count(u)) continue;
    have.insert(u);
    verts.push_back(u);
  }
  return Subtree(verts);
}

// WH of a path built one vertex at a time by splicing.
inline WhiteheadGraph splice_path(const LinePattern& p, const std::vector<Word>& path) {
  WhiteheadGraph g = wh_vertex(p, path.front());
  for (std::size_t i = 1; i < path.size(); ++i) {
    const Letter l = (path[i - 1].inverse() * path[i]).front();
    WhiteheadGraph left = delete_vertex(g, ComponentId{path[i - 1], l, 0});
    WhiteheadGraph right = delete_vertex(wh_vertex(p, path[i]), ComponentId{path[i], l.inverse(), 0});
    g = splice(left, right);
  }
  return g;
}

}  // namespace fixtures

#endif  // FREECUT_TESTS_FIXTURES_HPP
