#ifndef FREECUT_GENERICITY_HPP
#define FREECUT_GENERICITY_HPP

// Word properties whose densities decay exponentially, their exact and
// sampled densities, decay fits, and random peripheral structures.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "freecut/error.hpp"
#include "freecut/parallel.hpp"
#include "freecut/pattern.hpp"
#include "freecut/word.hpp"

namespace freecut {

enum class PropertyKind { kS, kN, kW, kL, kQ, kB, kFull, kH };

struct PropertySpec {
  PropertyKind kind = PropertyKind::kS;
  std::size_t k = 0;  // L, B, FULL, H
  double eps = 0;     // Q
  Word target;        // W

  std::string name() const {
    switch (kind) {
      case PropertyKind::kS: return "S";
      case PropertyKind::kN: return "N";
      case PropertyKind::kW: return "W";
      case PropertyKind::kL: return "L";
      case PropertyKind::kQ: return "Q";
      case PropertyKind::kB: return "B";
      case PropertyKind::kFull: return "FULL";
      case PropertyKind::kH: return "H";
    }
    return "?";
  }

  std::string params() const {
    switch (kind) {
      case PropertyKind::kW: return target.to_string();
      case PropertyKind::kQ: {
        std::ostringstream s;
        s << eps;
        return s.str();
      }
      case PropertyKind::kL:
      case PropertyKind::kB:
      case PropertyKind::kFull:
      case PropertyKind::kH: return std::to_string(k);
      default: return "";
    }
  }

  std::string to_string() const {
    const std::string p = params();
    return p.empty() ? name() : name() + "(" + p + ")";
  }

  // S, N, W(word), L(k), Q(eps), B(k), FULL(m), H(k). A numeric parameter
  // may also follow the name directly, as in B1.
  static PropertySpec parse(const std::string& text, unsigned rank) {
    static const std::regex re(R"(\s*([A-Za-z]+)\s*(?:\(\s*([^)\s]*)\s*\)|([0-9][0-9.]*))?\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw Error("bad property spec: " + text);
    std::string name = m[1];
    for (char& c : name) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    const bool has_arg = m[2].matched || m[3].matched;
    const std::string arg = m[2].matched ? m[2].str() : m[3].str();
    PropertySpec s;
    auto need_int = [&]() {
      if (!has_arg || arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos) {
        throw Error(name + " needs a positive integer parameter");
      }
      const std::size_t v = std::stoull(arg);
      if (v < 1) throw Error(name + " needs a positive integer parameter");
      return v;
    };
    if (name == "S" || name == "N") {
      if (has_arg) throw Error(name + " takes no parameter");
      s.kind = name == "S" ? PropertyKind::kS : PropertyKind::kN;
    } else if (name == "W") {
      if (!has_arg) throw Error("W needs a target word");
      s.kind = PropertyKind::kW;
      s.target = Word::parse(arg, rank);
      if (s.target.empty()) throw Error("W needs a nontrivial target");
      if (s.target.size() != arg.size()) throw Error("W target must be reduced");
    } else if (name == "Q") {
      if (!has_arg) throw Error("Q needs epsilon");
      s.kind = PropertyKind::kQ;
      try {
        std::size_t used = 0;
        s.eps = std::stod(arg, &used);
        if (used != arg.size()) throw Error("");
      } catch (...) {
        throw Error("Q needs a numeric epsilon");
      }
      if (!(s.eps > 0)) throw Error("Q needs epsilon > 0");
    } else if (name == "L") {
      s.kind = PropertyKind::kL;
      s.k = need_int();
    } else if (name == "B") {
      s.kind = PropertyKind::kB;
      s.k = need_int();
    } else if (name == "FULL") {
      s.kind = PropertyKind::kFull;
      s.k = need_int();
    } else if (name == "H") {
      s.kind = PropertyKind::kH;
      s.k = need_int();
    } else {
      throw Error("unknown property: " + name);
    }
    return s;
  }
};

// Number of occurrences of each length-2 word in the cyclic word, indexed
// [first code][second code].
inline std::vector<std::vector<std::size_t>> cyclic_pair_counts(std::span<const Letter> cyclic, unsigned rank) {
  std::vector<std::vector<std::size_t>> c(2 * rank, std::vector<std::size_t>(2 * rank, 0));
  const std::size_t n = cyclic.size();
  for (std::size_t i = 0; i < n; ++i) ++c[cyclic[i].code()][cyclic[(i + 1) % n].code()];
  return c;
}

// Edge multiplicities of the Whitehead graph of one cyclic word at a vertex:
// the pair {x^-1, y} collects the occurrences of xy and of its inverse.
// Returned for each unordered pair of distinct letters, in code order.
inline std::vector<std::size_t> vertex_pair_multiplicities(std::span<const Letter> cyclic, unsigned rank) {
  const unsigned d = 2 * rank;
  std::vector<std::vector<std::size_t>> m(d, std::vector<std::size_t>(d, 0));
  const std::size_t n = cyclic.size();
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned a = cyclic[(i + n - 1) % n].inverse().code();
    const unsigned b = cyclic[i].code();
    ++m[std::min(a, b)][std::max(a, b)];
  }
  std::vector<std::size_t> out;
  for (unsigned a = 0; a < d; ++a) {
    for (unsigned b = a + 1; b < d; ++b) out.push_back(m[a][b]);
  }
  return out;
}

// Window center of the pair frequencies.
inline double pair_frequency_center(unsigned rank) { return 1.0 / (rank * (2.0 * rank - 1)); }

inline bool eval_property(const PropertySpec& s, const Word& w, unsigned rank) {
  const std::size_t n = w.size();
  switch (s.kind) {
    case PropertyKind::kS:
      return cyclic_reduce(w).conjugator.size() <= n / 3;
    case PropertyKind::kN:
      return !w.empty() && primitive_root(w).exponent == 1;
    case PropertyKind::kW: {
      const std::size_t lo = n / 3;
      const std::size_t hi = (2 * n + 2) / 3;
      const std::size_t t = s.target.size();
      for (std::size_t p = lo; p + t <= hi; ++p) {
        if (std::equal(s.target.begin(), s.target.end(), w.begin() + static_cast<std::ptrdiff_t>(p))) return true;
      }
      return false;
    }
    case PropertyKind::kL:
      return n >= 15 * rank * (2 * rank - 1) * s.k;
    case PropertyKind::kQ: {
      const Word core = cyclic_reduce(w).core;
      if (core.empty()) return false;
      const double c = pair_frequency_center(rank);
      const double len = static_cast<double>(core.size());
      for (std::size_t m : vertex_pair_multiplicities(core.letters(), rank)) {
        const double f = static_cast<double>(m) / len;
        if (!(f > c - s.eps && f < c + s.eps)) return false;
      }
      return true;
    }
    case PropertyKind::kB:
    case PropertyKind::kH: {
      const Word core = cyclic_reduce(w).core;
      if (core.empty()) return false;
      auto c = cyclic_pair_counts(core.letters(), rank);
      for (unsigned a = 0; a < 2 * rank; ++a) {
        for (unsigned b = 0; b < 2 * rank; ++b) {
          if (b == (a ^ 1U)) continue;
          if (c[a][b] < s.k) return false;
        }
      }
      if (s.kind == PropertyKind::kB) return true;
      return is_k_full(core.letters(), 4, rank) && primitive_root(w).exponent == 1;
    }
    case PropertyKind::kFull: {
      const Word core = cyclic_reduce(w).core;
      return !core.empty() && is_k_full(core.letters(), static_cast<unsigned>(s.k), rank);
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Estimates

enum class EstimateMode { kExact, kMonteCarlo };

struct EstimateRow {
  std::string name;
  std::string params;
  unsigned r = 2;
  std::size_t n = 0;
  EstimateMode mode = EstimateMode::kExact;
  BigInt total = 0;
  BigInt hits = 0;
  double fraction = 0;
  double stderr_ = 0;
  std::optional<std::uint64_t> seed;

  double failure() const { return 1.0 - fraction; }
};

inline double big_ratio(const BigInt& num, const BigInt& den) {
  return static_cast<double>(boost::multiprecision::cpp_bin_float_100(num) /
                             boost::multiprecision::cpp_bin_float_100(den));
}

// Exact density over the sphere of reduced words of length n, split across
// workers by first letter.
inline EstimateRow exact_fraction(const PropertySpec& s, unsigned r, unsigned n,
                                  std::uint64_t cap = kDefaultEnumerationCap, unsigned threads = 1) {
  check_rank(r);
  check_enumeration_cap(r, n, cap);
  EstimateRow row;
  row.name = s.name();
  row.params = s.params();
  row.r = r;
  row.n = n;
  row.mode = EstimateMode::kExact;
  if (n == 0) {
    row.total = 1;
    row.hits = eval_property(s, Word(), r) ? 1 : 0;
  } else {
    std::vector<std::uint64_t> hits(2 * r, 0);
    parallel_for(2 * r, threads, [&](std::size_t c) {
      ReducedWordEnumerator it(r, n, cap, Letter::from_code(static_cast<unsigned>(c)));
      Word w;
      while (it.next(w)) hits[c] += eval_property(s, w, r) ? 1 : 0;
    });
    row.total = count_reduced_words(r, n);
    for (std::uint64_t h : hits) row.hits += h;
  }
  row.fraction = big_ratio(row.hits, row.total);
  return row;
}

inline constexpr std::uint64_t kSampleChunk = 4096;

// Seed of chunk i of a run; chunks are independent of the worker count.
inline std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  std::uint32_t parts[2];
  seq.generate(parts, parts + 2);
  return (static_cast<std::uint64_t>(parts[0]) << 32) | parts[1];
}

inline double binomial_stderr(double p, std::uint64_t samples) {
  return std::sqrt(std::max(0.0, p * (1 - p)) / static_cast<double>(samples));
}

// Sampled density over the sphere of length n.
inline EstimateRow mc_fraction(const PropertySpec& s, unsigned r, unsigned n, std::uint64_t samples,
                               std::uint64_t seed, unsigned threads = 1) {
  check_rank(r);
  if (samples < 1) throw Error("samples must be at least 1");
  const std::uint64_t chunks = (samples + kSampleChunk - 1) / kSampleChunk;
  std::vector<std::uint64_t> hits(chunks, 0);
  parallel_for(chunks, threads, [&](std::size_t c) {
    Rng rng(chunk_seed(seed, c));
    const std::uint64_t begin = c * kSampleChunk;
    const std::uint64_t end = std::min(samples, begin + kSampleChunk);
    std::uint64_t h = 0;
    for (std::uint64_t i = begin; i < end; ++i) h += eval_property(s, random_reduced_word(r, n, rng), r) ? 1 : 0;
    hits[c] = h;
  });
  EstimateRow row;
  row.name = s.name();
  row.params = s.params();
  row.r = r;
  row.n = n;
  row.mode = EstimateMode::kMonteCarlo;
  row.total = samples;
  std::uint64_t h = 0;
  for (std::uint64_t x : hits) h += x;
  row.hits = h;
  row.fraction = static_cast<double>(h) / static_cast<double>(samples);
  row.stderr_ = binomial_stderr(row.fraction, samples);
  row.seed = seed;
  return row;
}

struct DecayFit {
  double b = 0;
  double c = 0;
  double r2 = 0;
  std::size_t used = 0;
};

// Least squares of log(failure fraction) = b - c n over rows whose failure
// fraction is strictly between 0 and 1.
inline DecayFit decay_fit(const std::vector<EstimateRow>& rows) {
  std::vector<double> xs, ys;
  for (const EstimateRow& r : rows) {
    const double f = r.failure();
    if (f > 0 && f < 1) {
      xs.push_back(static_cast<double>(r.n));
      ys.push_back(std::log(f));
    }
  }
  if (xs.size() < 3) throw Error("decay fit needs at least 3 rows with failure fraction in (0, 1)");
  const double m = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0) throw Error("decay fit needs at least two distinct lengths");
  const double slope = sxy / sxx;
  DecayFit fit;
  fit.c = -slope;
  fit.b = my - slope * mx;
  double sse = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.b + slope * xs[i]);
    sse += e * e;
  }
  fit.r2 = syy == 0 ? 1.0 : 1.0 - sse / syy;
  fit.used = xs.size();
  return fit;
}

// ---------------------------------------------------------------------------
// CSV

inline const char* kEstimateCsvHeader = "name,params,r,n,mode,total,hits,fraction,stderr,seed";

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string to_csv_row(const EstimateRow& r) {
  std::ostringstream s;
  s << csv_field(r.name) << ',' << csv_field(r.params) << ',' << r.r << ',' << r.n << ','
    << (r.mode == EstimateMode::kExact ? "EXACT" : "MC") << ',' << r.total << ',' << r.hits << ','
    << std::setprecision(10) << r.fraction << ',' << std::setprecision(6) << r.stderr_ << ',';
  if (r.seed) s << *r.seed;
  return s.str();
}

// ---------------------------------------------------------------------------
// Random words and structures

// Uniform integer in [0, bound) for a big bound.
inline BigInt uniform_big(const BigInt& bound, Rng& rng) {
  if (bound <= 0) throw Error("empty range");
  const std::size_t bits = boost::multiprecision::msb(bound) + 1;
  for (;;) {
    BigInt x = 0;
    std::size_t have = 0;
    while (have < bits) {
      x <<= 64;
      x += rng();
      have += 64;
    }
    x >>= (have - bits);
    if (x < bound) return x;
  }
}

// Uniform over cyclically reduced words of length n, by rejection.
inline Word random_cyclically_reduced_word(unsigned rank, std::size_t n, Rng& rng) {
  if (n == 0) return Word();
  for (;;) {
    Word w = random_reduced_word(rank, n, rng);
    if (is_cyclically_reduced(w.letters())) return w;
  }
}

enum class WordModel { kBall, kSphere };

// Nontrivial reduced word of length at most n, uniform on the ball minus the
// identity.
class BallSampler {
 public:
  BallSampler(unsigned r, unsigned n) : r_(r) {
    check_rank(r);
    if (n < 1) throw Error("word length must be at least 1");
    BigInt total = 0;
    for (unsigned len = 1; len <= n; ++len) {
      total += count_reduced_words(r, len);
      cumulative_.push_back(total);
    }
  }

  Word operator()(Rng& rng) const {
    const BigInt x = uniform_big(cumulative_.back(), rng);
    const auto len = static_cast<std::size_t>(std::upper_bound(cumulative_.begin(), cumulative_.end(), x) -
                                              cumulative_.begin()) + 1;
    return random_reduced_word(r_, len, rng);
  }

 private:
  unsigned r_;
  std::vector<BigInt> cumulative_;
};

// `count` words from the ball (length at most n) or the sphere (length n).
inline std::vector<Word> random_words(unsigned r, unsigned n, std::size_t count, std::uint64_t seed,
                                      WordModel model = WordModel::kBall) {
  check_rank(r);
  if (count < 1) throw Error("count must be at least 1");
  if (n < 1) throw Error("word length must be at least 1");
  Rng rng(seed);
  std::vector<Word> words;
  if (model == WordModel::kBall) {
    const BallSampler ball(r, n);
    for (std::size_t i = 0; i < count; ++i) words.push_back(ball(rng));
  } else {
    for (std::size_t i = 0; i < count; ++i) words.push_back(random_reduced_word(r, n, rng));
  }
  return words;
}

inline LinePattern random_peripheral_structure(unsigned r, unsigned n, std::size_t count, std::uint64_t seed,
                                               WordModel model = WordModel::kBall) {
  return induced_pattern(random_words(r, n, count, seed, model), r);
}

}  // namespace freecut

#endif  // FREECUT_GENERICITY_HPP
