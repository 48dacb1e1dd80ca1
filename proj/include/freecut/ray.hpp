#ifndef FREECUT_RAY_HPP
#define FREECUT_RAY_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "freecut/error.hpp"
#include "freecut/pattern.hpp"
#include "freecut/word.hpp"

namespace freecut {

// An eventually periodic boundary point prefix * period^infinity, stored with
// the shortest prefix and a primitive period so that equal points compare
// equal.
class Ray {
 public:
  Ray() = default;

  // Any prefix and nontrivial period; cancellation is resolved.
  Ray(const Word& prefix, const Word& period) {
    if (period.empty()) throw Error("ray period must be nontrivial");
    CyclicReduction cr = cyclic_reduce(period);
    // period^k = c^-1 core^k c, so the limit is prefix c^-1 core^infinity
    Word pre = prefix * cr.conjugator.inverse();
    std::vector<Letter> per(cr.core.begin(), cr.core.end());
    per.resize(primitive_period(per));
    std::vector<Letter> pv(pre.begin(), pre.end());
    while (!pv.empty() && pv.back() == per.front().inverse()) {
      pv.pop_back();
      std::rotate(per.begin(), per.begin() + 1, per.end());
    }
    while (!pv.empty() && pv.back() == per.back()) {
      pv.pop_back();
      std::rotate(per.begin(), per.end() - 1, per.end());
    }
    prefix_ = Word::from_reduced(std::move(pv));
    period_ = Word::from_reduced(std::move(per));
  }

  const Word& prefix() const { return prefix_; }
  const Word& period() const { return period_; }

  // Letter i of the infinite reduced word.
  Letter at(std::size_t i) const {
    if (i < prefix_.size()) return prefix_[i];
    return period_[(i - prefix_.size()) % period_.size()];
  }

  // First n letters as a vertex of the tree.
  Word vertex_at(std::size_t n) const {
    std::vector<Letter> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
    return Word::from_reduced(std::move(out));
  }

  // Two distinct rays with these parameters disagree before this depth.
  friend std::size_t divergence_bound(const Ray& x, const Ray& y) {
    return x.prefix_.size() + y.prefix_.size() + 2 * (x.period_.size() + y.period_.size());
  }

  std::string to_string() const {
    return (prefix_.empty() ? std::string() : prefix_.to_string()) + "(" + period_.to_string() + ")";
  }

  friend bool operator==(const Ray&, const Ray&) = default;
  friend auto operator<=>(const Ray& x, const Ray& y) {
    if (auto c = x.prefix_ <=> y.prefix_; c != 0) return c;
    return x.period_ <=> y.period_;
  }

 private:
  Word prefix_;
  Word period_;
};

// Length of the common prefix of two distinct rays.
inline std::size_t ray_common_prefix(const Ray& x, const Ray& y) {
  if (x == y) throw Error("rays coincide");
  const std::size_t bound = divergence_bound(x, y);
  for (std::size_t i = 0; i < bound; ++i) {
    if (x.at(i) != y.at(i)) return i;
  }
  throw Error("rays coincide");
}

// Endpoints of a line; the first follows line_direction.
inline std::pair<Ray, Ray> line_endpoints(const LinePattern& p, const Line& l) {
  Word fwd = line_forward_reading(p, l);
  Ray forward(l.base, fwd);
  Ray backward(l.base, fwd.inverse());
  if (line_direction(p, l) == fwd) return {forward, backward};
  return {backward, forward};
}

}  // namespace freecut

#endif  // FREECUT_RAY_HPP
