#ifndef FREECUT_WORD_HPP
#define FREECUT_WORD_HPP

// Word algebra in a free group of rank r over the basis a, b, c, ...
//
// Letters are ordered a < A < b < B < ... (lowercase is a generator, uppercase
// its inverse). Every canonical form in the library uses this order.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "freecut/error.hpp"

namespace freecut {

using BigInt = boost::multiprecision::cpp_int;
using Rng = std::mt19937_64;

inline constexpr unsigned kMaxRank = 26;
inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000'000ULL;

class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(unsigned generator, bool inverse)
      : code_(static_cast<std::uint8_t>(2 * generator + (inverse ? 1 : 0))) {}

  static constexpr Letter from_code(unsigned code) {
    Letter l;
    l.code_ = static_cast<std::uint8_t>(code);
    return l;
  }

  constexpr unsigned code() const { return code_; }
  constexpr unsigned generator() const { return code_ >> 1; }
  constexpr bool is_inverse() const { return (code_ & 1U) != 0; }
  constexpr int sign() const { return is_inverse() ? -1 : 1; }
  constexpr Letter inverse() const { return from_code(code_ ^ 1U); }

  constexpr char to_char() const {
    return static_cast<char>((is_inverse() ? 'A' : 'a') + generator());
  }

  constexpr auto operator<=>(const Letter&) const = default;

 private:
  std::uint8_t code_ = 0;
};

inline Letter letter_from_char(char c, unsigned rank) {
  unsigned gen = 0;
  bool inv = false;
  if (c >= 'a' && c <= 'z') {
    gen = static_cast<unsigned>(c - 'a');
  } else if (c >= 'A' && c <= 'Z') {
    gen = static_cast<unsigned>(c - 'A');
    inv = true;
  } else {
    throw Error(std::string("invalid letter '") + c + "'");
  }
  if (gen >= rank) {
    throw Error(std::string("letter '") + c + "' exceeds rank " + std::to_string(rank));
  }
  return Letter(gen, inv);
}

inline bool is_reduced(std::span<const Letter> letters) {
  for (std::size_t i = 1; i < letters.size(); ++i) {
    if (letters[i] == letters[i - 1].inverse()) return false;
  }
  return true;
}

inline bool is_cyclically_reduced(std::span<const Letter> letters) {
  if (letters.empty() || !is_reduced(letters)) return false;
  return letters.front() != letters.back().inverse();
}

class Word;
Word reduce(std::span<const Letter> raw);

// A freely reduced word. The empty word is the identity.
class Word {
 public:
  Word() = default;

  // Reduces the input.
  explicit Word(std::span<const Letter> raw);

  static Word from_reduced(std::vector<Letter> letters) {
    if (!is_reduced(letters)) throw Error("word is not freely reduced");
    Word w;
    w.letters_ = std::move(letters);
    return w;
  }

  // Parses the ASCII form (a/A, b/B, ...). "1" and "" denote the identity.
  // The input is freely reduced.
  static Word parse(std::string_view text, unsigned rank);

  std::string to_string() const {
    if (letters_.empty()) return "1";
    std::string out;
    out.reserve(letters_.size());
    for (Letter l : letters_) out.push_back(l.to_char());
    return out;
  }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }
  std::span<const Letter> letters() const { return letters_; }

  Word inverse() const {
    Word w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
      w.letters_.push_back(it->inverse());
    }
    return w;
  }

  // Right multiplication by one letter, with cancellation.
  Word times(Letter l) const {
    Word w = *this;
    w.push_reduced(l);
    return w;
  }

  void push_reduced(Letter l) {
    if (!letters_.empty() && letters_.back() == l.inverse()) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }

  Word prefix(std::size_t n) const {
    Word w;
    w.letters_.assign(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(n));
    return w;
  }

  Word subword(std::size_t from, std::size_t to) const {
    Word w;
    w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(from),
                      letters_.begin() + static_cast<std::ptrdiff_t>(to));
    return w;
  }

  friend Word operator*(const Word& x, const Word& y) {
    std::size_t cancel = 0;
    while (cancel < x.size() && cancel < y.size() &&
           x.letters_[x.size() - 1 - cancel] == y.letters_[cancel].inverse()) {
      ++cancel;
    }
    Word w;
    w.letters_.reserve(x.size() + y.size() - 2 * cancel);
    w.letters_.insert(w.letters_.end(), x.letters_.begin(),
                      x.letters_.end() - static_cast<std::ptrdiff_t>(cancel));
    w.letters_.insert(w.letters_.end(), y.letters_.begin() + static_cast<std::ptrdiff_t>(cancel),
                      y.letters_.end());
    return w;
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& x, const Word& y) {
    return std::lexicographical_compare_three_way(x.letters_.begin(), x.letters_.end(),
                                                  y.letters_.begin(), y.letters_.end());
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ULL;
    for (Letter l : letters_) {
      h ^= l.code() + 1;
      h *= 1099511628211ULL;
    }
    return h;
  }

 private:
  std::vector<Letter> letters_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const { return w.hash(); }
};

inline Word reduce(std::span<const Letter> raw) {
  Word w;
  for (Letter l : raw) w.push_reduced(l);
  return w;
}

inline Word::Word(std::span<const Letter> raw) : Word(reduce(raw)) {}

inline Word Word::parse(std::string_view text, unsigned rank) {
  if (rank < 1 || rank > kMaxRank) throw Error("rank out of range");
  if (text == "1") return Word();
  Word w;
  for (char c : text) w.push_reduced(letter_from_char(c, rank));
  return w;
}

// Length of the common prefix of two words.
inline std::size_t common_prefix(std::span<const Letter> x, std::span<const Letter> y) {
  std::size_t n = 0;
  while (n < x.size() && n < y.size() && x[n] == y[n]) ++n;
  return n;
}

// Offset of the lexicographically least rotation.
inline std::size_t least_rotation(std::span<const Letter> s) {
  const std::size_t n = s.size();
  if (n == 0) return 0;
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    Letter a = s[(i + k) % n];
    Letter b = s[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

inline std::vector<Letter> rotate_letters(std::span<const Letter> s, std::size_t offset) {
  std::vector<Letter> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back(s[(offset + i) % s.size()]);
  return out;
}

inline std::vector<Letter> inverse_letters(std::span<const Letter> s) {
  std::vector<Letter> out;
  out.reserve(s.size());
  for (auto it = s.rbegin(); it != s.rend(); ++it) out.push_back(it->inverse());
  return out;
}

// Smallest p dividing |s| with s = (s[0..p))^(|s|/p).
inline std::size_t primitive_period(std::span<const Letter> s) {
  const std::size_t n = s.size();
  if (n == 0) return 0;
  std::vector<std::size_t> fail(n + 1, 0);
  for (std::size_t i = 1, k = 0; i < n; ++i) {
    while (k > 0 && s[i] != s[k]) k = fail[k];
    if (s[i] == s[k]) ++k;
    fail[i + 1] = k;
  }
  const std::size_t p = n - fail[n];
  return n % p == 0 ? p : n;
}

// A cyclically reduced word up to rotation, stored in its least rotation.
class CyclicWord {
 public:
  CyclicWord() = default;

  explicit CyclicWord(const Word& w) : CyclicWord(w.letters()) {}

  explicit CyclicWord(std::span<const Letter> letters) {
    if (!is_cyclically_reduced(letters)) throw Error("word is not cyclically reduced");
    letters_ = rotate_letters(letters, least_rotation(letters));
  }

  static CyclicWord parse(std::string_view text, unsigned rank) {
    return CyclicWord(Word::parse(text, rank));
  }

  std::size_t size() const { return letters_.size(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  std::span<const Letter> letters() const { return letters_; }
  Word to_word() const { return Word::from_reduced(letters_); }
  std::string to_string() const { return to_word().to_string(); }

  CyclicWord inverse() const { return CyclicWord(std::span<const Letter>(inverse_letters(letters_))); }

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
  friend auto operator<=>(const CyclicWord& x, const CyclicWord& y) {
    return std::lexicographical_compare_three_way(x.letters_.begin(), x.letters_.end(),
                                                  y.letters_.begin(), y.letters_.end());
  }

 private:
  std::vector<Letter> letters_;
};

// w = conjugator^-1 * core * conjugator, with core cyclically reduced (or
// empty when w is trivial) and the conjugator as short as possible.
struct CyclicReduction {
  Word core;
  Word conjugator;
};

inline CyclicReduction cyclic_reduce(const Word& w) {
  std::size_t i = 0;
  const std::size_t n = w.size();
  while (2 * i + 1 < n && w[i] == w[n - 1 - i].inverse()) ++i;
  return {w.subword(i, n - i), w.subword(n - i, n)};
}

struct PrimitiveRoot {
  CyclicWord root;
  unsigned exponent = 0;
};

inline PrimitiveRoot primitive_root(const Word& w) {
  if (w.empty()) throw Error("trivial word has no root");
  Word core = cyclic_reduce(w).core;
  const std::size_t p = primitive_period(core.letters());
  return {CyclicWord(core.letters().subspan(0, p)), static_cast<unsigned>(core.size() / p)};
}

// Starting positions p in [0, |w|) at which s is read cyclically from p.
// Overlapping occurrences each count; occurrences of s^-1 do not.
inline std::size_t cyclic_subword_count(std::span<const Letter> cyclic, std::span<const Letter> s) {
  if (s.empty()) throw Error("subword must be nonempty");
  const std::size_t n = cyclic.size();
  std::size_t count = 0;
  for (std::size_t p = 0; p < n; ++p) {
    std::size_t i = 0;
    while (i < s.size() && cyclic[(p + i) % n] == s[i]) ++i;
    if (i == s.size()) ++count;
  }
  return count;
}

inline std::size_t cyclic_subword_count(const CyclicWord& w, const Word& s) {
  return cyclic_subword_count(w.letters(), s.letters());
}

inline BigInt count_reduced_words(unsigned rank, unsigned n) {
  if (n == 0) return 1;
  BigInt c = 2 * rank;
  for (unsigned i = 1; i < n; ++i) c *= (2 * rank - 1);
  return c;
}

// Number of cyclic subwords of length k that must all occur for k-fullness.
inline bool is_k_full(std::span<const Letter> cyclic, unsigned k, unsigned rank) {
  if (k == 0) throw Error("k must be positive");
  if (!is_cyclically_reduced(cyclic)) throw Error("fullness is defined for cyclically reduced words");
  const BigInt needed = count_reduced_words(rank, k);
  const std::size_t n = cyclic.size();
  if (needed > n) return false;
  const auto target = static_cast<std::size_t>(needed);
  const unsigned bits = [&] {
    unsigned b = 1;
    while ((1U << b) < 2 * rank) ++b;
    return b;
  }();
  if (static_cast<std::uint64_t>(bits) * k <= 64) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(2 * target);
    for (std::size_t p = 0; p < n; ++p) {
      std::uint64_t code = 0;
      for (unsigned i = 0; i < k; ++i) code = (code << bits) | cyclic[(p + i) % n].code();
      seen.insert(code);
      if (seen.size() == target) return true;
    }
    return seen.size() == target;
  }
  std::unordered_set<std::string> seen;
  for (std::size_t p = 0; p < n; ++p) {
    std::string key;
    key.reserve(k);
    for (unsigned i = 0; i < k; ++i) key.push_back(cyclic[(p + i) % n].to_char());
    seen.insert(std::move(key));
  }
  return seen.size() == target;
}

inline bool is_k_full(const CyclicWord& w, unsigned k, unsigned rank) {
  return is_k_full(w.letters(), k, rank);
}

inline void check_rank(unsigned rank) {
  if (rank < 2 || rank > kMaxRank) throw Error("rank must be in [2, 26]");
}

// (2r-1)^n + r + (-1)^n (r-1)
inline BigInt count_cyclically_reduced(unsigned rank, unsigned n) {
  check_rank(rank);
  if (n < 1) throw Error("length must be positive");
  BigInt c = boost::multiprecision::pow(BigInt(2 * rank - 1), n);
  c += rank;
  if (n % 2 == 0) {
    c += rank - 1;
  } else {
    c -= rank - 1;
  }
  return c;
}

// Words of length n whose cyclic reduction is one fixed cyclically reduced
// word of length k.
inline BigInt count_with_cyclic_reduction(unsigned rank, unsigned n, unsigned k) {
  check_rank(rank);
  if (k < 1 || k > n) throw Error("need 1 <= k <= n");
  if (n == k) return 1;
  if ((n - k) % 2 != 0) return 0;
  const unsigned half = (n - k) / 2;
  return BigInt(2 * rank - 2) * boost::multiprecision::pow(BigInt(2 * rank - 1), half - 1);
}

// Uniform on the sphere of reduced words of length exactly n.
inline Word random_reduced_word(unsigned rank, std::size_t n, Rng& rng) {
  check_rank(rank);
  std::vector<Letter> letters;
  letters.reserve(n);
  if (n == 0) return Word();
  std::uniform_int_distribution<unsigned> first(0, 2 * rank - 1);
  std::uniform_int_distribution<unsigned> next(0, 2 * rank - 2);
  letters.push_back(Letter::from_code(first(rng)));
  for (std::size_t i = 1; i < n; ++i) {
    unsigned c = next(rng);
    // skip the code that would cancel
    if (c >= letters.back().inverse().code()) ++c;
    letters.push_back(Letter::from_code(c));
  }
  return Word::from_reduced(std::move(letters));
}

inline Word random_reduced_word(unsigned rank, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_reduced_word(rank, n, rng);
}

inline void check_enumeration_cap(unsigned rank, unsigned n, std::uint64_t cap) {
  if (count_reduced_words(rank, n) > cap) {
    throw BudgetExceeded("enumeration of length-" + std::to_string(n) + " words in rank " +
                         std::to_string(rank) + " exceeds cap " + std::to_string(cap));
  }
}

// Streams the reduced words of length exactly n in lexicographic order.
// Optionally restricted to words starting with a given letter, which is how
// enumeration is partitioned across workers.
class ReducedWordEnumerator {
 public:
  ReducedWordEnumerator(unsigned rank, unsigned n, std::uint64_t cap = kDefaultEnumerationCap,
                        std::optional<Letter> first = std::nullopt)
      : rank_(rank), n_(n), first_(first) {
    check_rank(rank);
    check_enumeration_cap(rank, n, cap);
  }

  // Writes the next word into out; false once exhausted.
  bool next(Word& out) {
    if (done_) return false;
    if (!started_) {
      started_ = true;
      codes_.assign(n_, 0);
      if (n_ > 0 && first_) codes_[0] = first_->code();
      fill_from(first_ ? 1 : 0);
    } else if (!advance()) {
      done_ = true;
      return false;
    }
    std::vector<Letter> letters;
    letters.reserve(n_);
    for (unsigned c : codes_) letters.push_back(Letter::from_code(c));
    out = Word::from_reduced(std::move(letters));
    return true;
  }

 private:
  bool ok(std::size_t i, unsigned c) const { return i == 0 || c != (codes_[i - 1] ^ 1U); }

  // Sets positions [from, n) to their smallest admissible values.
  void fill_from(std::size_t from) {
    for (std::size_t i = from; i < n_; ++i) {
      unsigned c = 0;
      while (!ok(i, c)) ++c;
      codes_[i] = c;
    }
  }

  bool advance() {
    if (n_ == 0) return false;
    const std::size_t lowest = first_ ? 1 : 0;
    for (std::size_t i = n_; i-- > lowest;) {
      unsigned c = codes_[i] + 1;
      while (c < 2 * rank_ && !ok(i, c)) ++c;
      if (c < 2 * rank_) {
        codes_[i] = c;
        fill_from(i + 1);
        return true;
      }
    }
    return false;
  }

  unsigned rank_;
  unsigned n_;
  std::optional<Letter> first_;
  std::vector<unsigned> codes_;
  bool started_ = false;
  bool done_ = false;
};

template <typename Fn>
void for_each_reduced_word(unsigned rank, unsigned n, Fn&& fn, std::uint64_t cap = kDefaultEnumerationCap) {
  ReducedWordEnumerator it(rank, n, cap);
  Word w;
  while (it.next(w)) fn(w);
}

}  // namespace freecut

template <>
struct std::hash<freecut::Word> {
  std::size_t operator()(const freecut::Word& w) const { return w.hash(); }
};

#endif  // FREECUT_WORD_HPP
