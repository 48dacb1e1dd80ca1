#ifndef FREECUT_PATTERN_HPP
#define FREECUT_PATTERN_HPP

// Line patterns: a finite set of primitive, pairwise non-conjugate cyclic
// words, and the lines {h g^k} they define in the Cayley tree.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "freecut/error.hpp"
#include "freecut/word.hpp"

namespace freecut {

// Least representative of w under rotation and inversion.
inline CyclicWord canonical_pattern_word(const CyclicWord& w) {
  CyclicWord inv = w.inverse();
  return inv < w ? inv : w;
}

struct PatternWord {
  CyclicWord word;
  std::uint32_t id = 0;
};

class LinePattern {
 public:
  LinePattern() = default;

  // Words must be primitive, canonical and pairwise distinct; ids follow the
  // given order.
  LinePattern(unsigned rank, const std::vector<CyclicWord>& words) : rank_(rank) {
    check_rank(rank);
    if (words.empty()) throw Error("a line pattern needs at least one word");
    for (const CyclicWord& w : words) {
      if (w.size() == 0) throw Error("pattern words must be nontrivial");
      for (Letter l : w.letters()) {
        if (l.generator() >= rank) throw Error("pattern word exceeds rank");
      }
      if (primitive_period(w.letters()) != w.size()) throw Error("pattern word is a proper power");
      if (canonical_pattern_word(w) != w) throw Error("pattern word is not canonical");
      for (const PatternWord& seen : words_) {
        if (seen.word == w) throw Error("duplicate pattern word");
      }
      words_.push_back({w, static_cast<std::uint32_t>(words_.size())});
      total_length_ += w.size();
    }
  }

  unsigned rank() const { return rank_; }
  const std::vector<PatternWord>& words() const { return words_; }
  const CyclicWord& word(std::uint32_t id) const { return words_.at(id).word; }
  std::size_t size() const { return words_.size(); }
  std::size_t total_length() const { return total_length_; }
  std::size_t max_word_length() const {
    std::size_t m = 0;
    for (const auto& pw : words_) m = std::max(m, pw.word.size());
    return m;
  }

  // Letter i (taken cyclically) of word id.
  Letter at(std::uint32_t id, std::size_t i) const {
    const CyclicWord& w = words_[id].word;
    return w[i % w.size()];
  }

 private:
  unsigned rank_ = 2;
  std::vector<PatternWord> words_;
  std::size_t total_length_ = 0;
};

// Cyclic reduction, primitive root and rotation/inversion canonicalization of
// each word; duplicates are dropped keeping the first occurrence.
inline LinePattern induced_pattern(const std::vector<Word>& raw, unsigned rank) {
  std::vector<CyclicWord> words;
  for (const Word& w : raw) {
    if (w.empty()) throw Error("trivial word in pattern");
    CyclicWord c = canonical_pattern_word(primitive_root(w).root);
    if (std::find(words.begin(), words.end(), c) == words.end()) words.push_back(std::move(c));
  }
  return LinePattern(rank, words);
}

// One word per line; '#' starts a comment; blank lines are skipped.
inline std::vector<Word> parse_pattern_words(std::istream& in, unsigned rank) {
  std::vector<Word> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string token;
    std::istringstream fields(line);
    while (fields >> token) {
      try {
        out.push_back(Word::parse(token, rank));
      } catch (const Error& e) {
        throw Error("line " + std::to_string(lineno) + ": " + e.what());
      }
    }
  }
  return out;
}

inline LinePattern parse_pattern(std::string_view text, unsigned rank) {
  std::istringstream in{std::string(text)};
  std::vector<Word> words = parse_pattern_words(in, rank);
  if (words.empty()) throw Error("empty pattern");
  return induced_pattern(words, rank);
}

// A line of the pattern. Reading forward from base, the line spells word
// `word_id` rotated left by `offset`, repeated forever; base is the vertex of
// the line closest to the identity.
struct Line {
  std::uint32_t word_id = 0;
  Word base;
  std::uint32_t offset = 0;

  friend bool operator==(const Line&, const Line&) = default;
  friend auto operator<=>(const Line& x, const Line& y) {
    if (auto c = x.word_id <=> y.word_id; c != 0) return c;
    if (auto c = x.base <=> y.base; c != 0) return c;
    return x.offset <=> y.offset;
  }
};

struct LineHash {
  std::size_t operator()(const Line& l) const {
    return l.base.hash() * 31 + l.word_id * 1000003ULL + l.offset;
  }
};

// Letter leading forward (along the pattern word) from a vertex at offset o.
inline Letter forward_letter(const LinePattern& p, std::uint32_t id, std::size_t o) {
  return p.at(id, o);
}

// Letter leading backward from a vertex at offset o.
inline Letter backward_letter(const LinePattern& p, std::uint32_t id, std::size_t o) {
  const std::size_t len = p.word(id).size();
  return p.at(id, (o + len - 1) % len).inverse();
}

// The line through `vertex` that reads word `id` rotated by `offset` forward.
inline Line line_through(const LinePattern& p, std::uint32_t id, Word vertex, std::size_t offset) {
  const std::size_t len = p.word(id).size();
  std::size_t o = offset % len;
  std::vector<Letter> v(vertex.begin(), vertex.end());
  while (!v.empty()) {
    if (v.back() == forward_letter(p, id, o).inverse()) {
      v.pop_back();
      o = (o + 1) % len;
    } else if (v.back() == backward_letter(p, id, o).inverse()) {
      v.pop_back();
      o = (o + len - 1) % len;
    } else {
      break;
    }
  }
  return Line{id, Word::from_reduced(std::move(v)), static_cast<std::uint32_t>(o)};
}

// The forward reading of the line at its base: a rotation of the pattern word.
inline Word line_forward_reading(const LinePattern& p, const Line& l) {
  return Word::from_reduced(rotate_letters(p.word(l.word_id).letters(), l.offset));
}

// The lexicographically smaller of the two readings of the line from its base.
inline Word line_direction(const LinePattern& p, const Line& l) {
  Word fwd = line_forward_reading(p, l);
  Word bwd = fwd.inverse();
  // first letters always differ since the pattern word is cyclically reduced
  return bwd < fwd ? bwd : fwd;
}

inline std::string line_to_string(const LinePattern& p, const Line& l) {
  return std::to_string(l.word_id) + ":" + l.base.to_string() + ":" +
         line_direction(p, l).to_string();
}

// Offset of the line at vertex u when u lies on it.
inline std::optional<std::size_t> offset_at(const LinePattern& p, const Line& l, const Word& u) {
  const std::size_t c = common_prefix(l.base.letters(), u.letters());
  const std::size_t up = l.base.size() - c;
  const std::size_t len = p.word(l.word_id).size();
  // d = base^-1 u, read without materializing it
  auto d_at = [&](std::size_t i) {
    return i < up ? l.base[l.base.size() - 1 - i].inverse() : u[c + i - up];
  };
  const std::size_t dlen = up + (u.size() - c);
  if (dlen == 0) return l.offset;
  if (d_at(0) == forward_letter(p, l.word_id, l.offset)) {
    for (std::size_t i = 0; i < dlen; ++i) {
      if (d_at(i) != p.at(l.word_id, l.offset + i)) return std::nullopt;
    }
    return (l.offset + dlen) % len;
  }
  if (d_at(0) == backward_letter(p, l.word_id, l.offset)) {
    std::size_t o = l.offset;
    for (std::size_t i = 0; i < dlen; ++i) {
      if (d_at(i) != backward_letter(p, l.word_id, o)) return std::nullopt;
      o = (o + len - 1) % len;
    }
    return o;
  }
  return std::nullopt;
}

inline bool line_contains(const LinePattern& p, const Line& l, const Word& u) {
  return offset_at(p, l, u).has_value();
}

// Exactly total_length() lines, one per cyclic position of each pattern word.
inline std::vector<Line> lines_through_vertex(const LinePattern& p, const Word& v) {
  std::vector<Line> out;
  out.reserve(p.total_length());
  for (const PatternWord& pw : p.words()) {
    for (std::size_t o = 0; o < pw.word.size(); ++o) out.push_back(line_through(p, pw.id, v, o));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Lines containing both `from` and `from * letter`.
inline std::vector<Line> lines_through_edge(const LinePattern& p, const Word& from, Letter letter) {
  std::vector<Line> out;
  for (const PatternWord& pw : p.words()) {
    for (std::size_t o = 0; o < pw.word.size(); ++o) {
      if (forward_letter(p, pw.id, o) == letter || backward_letter(p, pw.id, o) == letter) {
        out.push_back(line_through(p, pw.id, from, o));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace freecut

#endif  // FREECUT_PATTERN_HPP
