#include <gtest/gtest.h>

#include <cmath>

#include "freecut/genericity.hpp"
#include "oracles.hpp"

using namespace freecut;

namespace {

Word W(const std::string& s) { return Word::parse(s, 2); }
PropertySpec P(const std::string& s) { return PropertySpec::parse(s, 2); }

const std::vector<std::string> kSpecs = {"S", "N", "W(ab)", "W(aBa)", "L(1)", "Q(0.05)", "Q(0.2)",
                                          "B(1)", "FULL(1)", "FULL(2)", "H(1)"};

// Independent string evaluation of each property.
bool oracle_property(const PropertySpec& s, const std::string& w, unsigned rank) {
  const std::size_t n = w.size();
  const std::string core = oracle::cyclic_core(w);
  switch (s.kind) {
    case PropertyKind::kS:
      return (n - core.size()) / 2 <= n / 3;
    case PropertyKind::kN:
      return !core.empty() && !oracle::is_proper_power(core);
    case PropertyKind::kW: {
      const std::size_t lo = n / 3;
      const std::size_t hi = static_cast<std::size_t>(std::ceil(2.0 * static_cast<double>(n) / 3.0));
      const std::string mid = w.substr(lo, hi - lo);
      return mid.find(s.target.to_string()) != std::string::npos;
    }
    case PropertyKind::kL:
      return n >= 15 * rank * (2 * rank - 1) * s.k;
    case PropertyKind::kQ: {
      if (core.empty()) return false;
      auto pairs = oracle::wh_vertex_pairs({core});
      const std::string alpha = oracle::alphabet(rank);
      const double c = 1.0 / (rank * (2.0 * rank - 1));
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        for (std::size_t j = i + 1; j < alpha.size(); ++j) {
          const auto it = pairs.find({alpha[i], alpha[j]});
          const double f = (it == pairs.end() ? 0.0 : static_cast<double>(it->second)) / static_cast<double>(core.size());
          if (!(f > c - s.eps && f < c + s.eps)) return false;
        }
      }
      return true;
    }
    case PropertyKind::kB:
    case PropertyKind::kH: {
      if (core.empty()) return false;
      for (const std::string& t : oracle::all_reduced(rank, 2)) {
        if (oracle::cyclic_count(core, t) < s.k) return false;
      }
      if (s.kind == PropertyKind::kB) return true;
      return oracle::k_full(core, 4, rank) && !oracle::is_proper_power(core);
    }
    case PropertyKind::kFull:
      return !core.empty() && oracle::k_full(core, static_cast<unsigned>(s.k), rank);
  }
  return false;
}

}  // namespace

TEST(PropertySpec, ParsesAndPrints) {
  EXPECT_EQ(P("S").to_string(), "S");
  EXPECT_EQ(P("n").to_string(), "N");
  EXPECT_EQ(P("W(ab)").to_string(), "W(ab)");
  EXPECT_EQ(P("Q(0.05)").to_string(), "Q(0.05)");
  EXPECT_EQ(P("B(3)").to_string(), "B(3)");
  EXPECT_EQ(P("full(4)").to_string(), "FULL(4)");
  EXPECT_EQ(P(" H( 2 ) ").to_string(), "H(2)");
  EXPECT_EQ(P("L(7)").k, 7U);
  EXPECT_EQ(P("B1").to_string(), "B(1)");
  EXPECT_EQ(P("FULL4").to_string(), "FULL(4)");
  EXPECT_EQ(P("Q0.1").to_string(), "Q(0.1)");
}

TEST(PropertySpec, RejectsInvalidParameters) {
  for (const char* bad : {"", "X", "S(1)", "B", "B(0)", "B(-1)", "B(x)", "Q(0)", "Q(-0.1)", "Q(abc)", "W()",
                          "W(aA)", "W(c)", "FULL(1.5)", "L"}) {
    EXPECT_THROW(P(bad), Error) << bad;
  }
}

TEST(EvalProperty, Examples) {
  EXPECT_TRUE(eval_property(P("S"), W("Baaaab"), 2));
  EXPECT_FALSE(eval_property(P("S"), W("BBBabbb"), 2));
  EXPECT_FALSE(eval_property(P("B(1)"), W("abAB"), 2));
  EXPECT_FALSE(eval_property(P("N"), W("abab"), 2));
  EXPECT_FALSE(eval_property(P("N"), W("Baab"), 2));
  EXPECT_TRUE(eval_property(P("N"), W("abAB"), 2));
  EXPECT_FALSE(eval_property(P("N"), Word(), 2));
  EXPECT_FALSE(eval_property(P("Q(0.5)"), Word(), 2));
  EXPECT_FALSE(eval_property(P("Q(0.5)"), W("abBA"), 2));
  EXPECT_TRUE(eval_property(P("W(ab)"), W("aaabaa"), 2));
  EXPECT_FALSE(eval_property(P("W(ab)"), W("abaaaa"), 2));
  EXPECT_FALSE(eval_property(P("FULL(4)"), W("ab"), 2));
}

TEST(EvalProperty, LengthThreshold) {
  EXPECT_FALSE(eval_property(P("L(1)"), random_reduced_word(2, 89, 1), 2));
  EXPECT_TRUE(eval_property(P("L(1)"), random_reduced_word(2, 90, 1), 2));
  EXPECT_FALSE(eval_property(P("L(2)"), random_reduced_word(3, 449, 1), 3));
  EXPECT_TRUE(eval_property(P("L(2)"), random_reduced_word(3, 450, 1), 3));
}

TEST(EvalProperty, MatchesOracleOnAllShortWords) {
  for (const std::string& text : kSpecs) {
    const PropertySpec s = P(text);
    for (unsigned n = 0; n <= 8; ++n) {
      for (const std::string& w : oracle::all_reduced(2, n)) {
        ASSERT_EQ(eval_property(s, W(w), 2), oracle_property(s, w, 2)) << text << " " << w;
      }
    }
  }
}

TEST(EvalProperty, MatchesOracleOnRandomWords) {
  Rng rng(11);
  for (const char* text : {"Q(0.05)", "Q(0.1)", "B(1)", "B(3)", "FULL(2)", "FULL(3)", "H(1)", "W(abA)"}) {
    const PropertySpec s = P(text);
    for (int i = 0; i < 300; ++i) {
      const Word w = random_reduced_word(2, 20 + rng() % 200, rng);
      ASSERT_EQ(eval_property(s, w, 2), oracle_property(s, w.to_string(), 2)) << text << " " << w.to_string();
    }
  }
}

TEST(EvalProperty, PairFrequenciesAverageToWindowCenter) {
  Rng rng(5);
  for (unsigned r = 2; r <= 4; ++r) {
    for (int i = 0; i < 50; ++i) {
      const Word w = random_cyclically_reduced_word(r, 10 + rng() % 100, rng);
      const auto m = vertex_pair_multiplicities(w.letters(), r);
      ASSERT_EQ(m.size(), r * (2 * r - 1));
      std::size_t sum = 0;
      for (std::size_t x : m) sum += x;
      ASSERT_EQ(sum, w.size());
      EXPECT_NEAR(static_cast<double>(sum) / static_cast<double>(w.size()) / static_cast<double>(m.size()),
                  pair_frequency_center(r), 1e-12);
    }
  }
  EXPECT_DOUBLE_EQ(pair_frequency_center(2), 1.0 / 6.0);
}

TEST(Containment, HInsideB) {
  Rng rng(21);
  for (int i = 0; i < 10000; ++i) {
    const Word w = random_reduced_word(2, 1 + rng() % 400, rng);
    for (std::size_t k : {1U, 2U, 3U}) {
      PropertySpec h = P("H(1)"), b = P("B(1)");
      h.k = b.k = k;
      if (eval_property(h, w, 2)) {
        ASSERT_TRUE(eval_property(b, w, 2)) << w.to_string();
      }
    }
  }
}

// Pair frequencies above 1/(2r(2r-1)) on a surviving middle third of a word
// in L(k) give every vertex pair at least k edges.
TEST(Containment, DensePairsOnLongWordsGiveKEdgesPerPair) {
  Rng rng(22);
  PropertySpec p = P("Q(1)");
  p.eps = 1.0 / 12.0;
  std::size_t premise = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::size_t k = 1 + rng() % 3;
    PropertySpec l = P("L(1)");
    l.k = k;
    const Word w = random_reduced_word(2, 90 * k + rng() % 200, rng);
    if (!(eval_property(P("S"), w, 2) && eval_property(p, w, 2) && eval_property(l, w, 2))) continue;
    ++premise;
    const Word core = cyclic_reduce(w).core;
    for (std::size_t m : vertex_pair_multiplicities(core.letters(), 2)) ASSERT_GE(m, k) << w.to_string();
  }
  EXPECT_GT(premise, 9000U);
}

// A pair multiplicity adds the counts of a length-2 word and of its inverse,
// so a dense pair can still miss one of the two words.
TEST(Containment, DensePairsDoNotForceEveryLengthTwoWord) {
  const Word w = W(
      "aaaaaaaBABaBaBBaBBBAbAAbaBAABBBBaaBBBABBaaBAABaaBBBAABAbAAAbaaBaBBBaaaBaaBAABBBaBABaBAABaBBaBBBBABaaBBBBaaBBaaa"
      "BaaaaBaBB");
  PropertySpec p = P("Q(1)");
  p.eps = 1.0 / 12.0;
  EXPECT_TRUE(eval_property(P("S"), w, 2));
  EXPECT_TRUE(eval_property(p, w, 2));
  EXPECT_TRUE(eval_property(P("L(1)"), w, 2));
  EXPECT_FALSE(eval_property(P("B(1)"), w, 2));
  EXPECT_EQ(cyclic_subword_count(w.letters(), W("ab").letters()), 0U);
}

TEST(ExactFraction, SmallCases) {
  const EstimateRow n2 = exact_fraction(P("N"), 2, 2);
  EXPECT_EQ(n2.total, 12);
  EXPECT_EQ(n2.hits, 8);
  EXPECT_EQ(n2.stderr_, 0.0);
  EXPECT_EQ(n2.mode, EstimateMode::kExact);

  std::size_t full = 0;
  for (const std::string& w : oracle::all_reduced(2, 4)) full += oracle::k_full(oracle::cyclic_core(w), 1, 2) ? 1 : 0;
  const EstimateRow f = exact_fraction(P("FULL(1)"), 2, 4);
  EXPECT_EQ(f.total, 108);
  EXPECT_EQ(f.hits, full);
  EXPECT_EQ(f.hits, 8);
  EXPECT_TRUE(eval_property(P("FULL(1)"), W("abAB"), 2));

  EXPECT_EQ(exact_fraction(P("S"), 2, 0).total, 1);
  EXPECT_EQ(exact_fraction(P("L(1)"), 2, 12).hits, 0);
}

TEST(ExactFraction, MatchesOracleCountsAndThreads) {
  for (const std::string& text : kSpecs) {
    const PropertySpec s = P(text);
    for (unsigned n = 1; n <= 7; ++n) {
      std::size_t hits = 0;
      const auto words = oracle::all_reduced(2, n);
      for (const std::string& w : words) hits += oracle_property(s, w, 2) ? 1 : 0;
      const EstimateRow one = exact_fraction(s, 2, n, kDefaultEnumerationCap, 1);
      const EstimateRow four = exact_fraction(s, 2, n, kDefaultEnumerationCap, 4);
      ASSERT_EQ(one.total, words.size());
      ASSERT_EQ(one.hits, hits) << text << " n=" << n;
      ASSERT_EQ(four.hits, hits);
    }
  }
}

TEST(ExactFraction, RespectsCap) { EXPECT_THROW(exact_fraction(P("S"), 2, 20, 1000), Error); }

TEST(MonteCarlo, DeterministicAndThreadIndependent) {
  const EstimateRow a = mc_fraction(P("B(1)"), 2, 40, 20000, 99, 1);
  const EstimateRow b = mc_fraction(P("B(1)"), 2, 40, 20000, 99, 1);
  const EstimateRow c = mc_fraction(P("B(1)"), 2, 40, 20000, 99, 6);
  EXPECT_EQ(a.hits, b.hits);
  EXPECT_EQ(a.hits, c.hits);
  EXPECT_EQ(to_csv_row(a), to_csv_row(c));
  EXPECT_NE(mc_fraction(P("B(1)"), 2, 40, 20000, 100, 1).hits, a.hits);
  EXPECT_EQ(a.seed, 99U);
  EXPECT_NEAR(a.stderr_, std::sqrt(a.fraction * (1 - a.fraction) / 20000.0), 1e-15);
  EXPECT_THROW(mc_fraction(P("S"), 2, 5, 0, 1), Error);
}

TEST(MonteCarlo, FullFourImpossibleAtFifty) {
  EXPECT_EQ(mc_fraction(P("FULL(4)"), 2, 50, 10000, 3, 4).hits, 0);
}

TEST(MonteCarlo, AgreesWithExactUpToTwelve) {
  std::uint64_t seed = 1000;
  for (const std::string& text : kSpecs) {
    const PropertySpec s = P(text);
    for (unsigned n = 1; n <= 12; n += 1) {
      const EstimateRow ex = exact_fraction(s, 2, n, kDefaultEnumerationCap, 4);
      const std::uint64_t samples = 20000;
      const EstimateRow mc = mc_fraction(s, 2, n, samples, seed++, 4);
      const double se = binomial_stderr(ex.fraction, samples);
      EXPECT_LE(std::abs(mc.fraction - ex.fraction), 4 * se + 1e-12) << text << " n=" << n;
    }
  }
}

TEST(MonteCarlo, FailureFractionsDecreaseOnGrid) {
  for (const char* text : {"S", "N", "B(1)", "FULL(1)"}) {
    double prev = 2, prev_se = 0;
    for (unsigned n = 20; n <= 80; n += 10) {
      const EstimateRow row = mc_fraction(P(text), 2, n, 20000, 500 + n, 4);
      EXPECT_LE(row.failure(), prev + 2 * std::max(prev_se, row.stderr_)) << text << " n=" << n;
      prev = row.failure();
      prev_se = row.stderr_;
    }
  }
}

TEST(DecayFit, ExactLogLinear) {
  std::vector<EstimateRow> rows;
  for (int n = 1; n <= 3; ++n) {
    EstimateRow r;
    r.n = static_cast<std::size_t>(n);
    r.fraction = 1 - std::exp(-n);
    rows.push_back(r);
  }
  const DecayFit f = decay_fit(rows);
  EXPECT_NEAR(f.c, 1, 1e-12);
  EXPECT_NEAR(f.b, 0, 1e-12);
  EXPECT_NEAR(f.r2, 1, 1e-12);
}

TEST(DecayFit, ConstantFailureHasNoDecay) {
  std::vector<EstimateRow> rows;
  for (int n = 1; n <= 4; ++n) {
    EstimateRow r;
    r.n = static_cast<std::size_t>(n);
    r.fraction = 0.75;
    rows.push_back(r);
  }
  EXPECT_NEAR(decay_fit(rows).c, 0, 1e-12);
}

TEST(DecayFit, NeedsUsableRows) {
  std::vector<EstimateRow> rows(5);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].n = i;
    rows[i].fraction = i < 3 ? 1.0 : 0.5;
  }
  EXPECT_THROW(decay_fit(rows), Error);
}

TEST(DecayFit, DetectsDecayOfB1) {
  std::vector<EstimateRow> rows;
  for (unsigned n = 20; n <= 80; n += 10) rows.push_back(mc_fraction(P("B(1)"), 2, n, 20000, n, 4));
  const DecayFit f = decay_fit(rows);
  EXPECT_GT(f.c, 0);
  EXPECT_GE(f.r2, 0.9);
}

TEST(Csv, RowFormat) {
  EXPECT_STREQ(kEstimateCsvHeader, "name,params,r,n,mode,total,hits,fraction,stderr,seed");
  EXPECT_EQ(to_csv_row(exact_fraction(P("N"), 2, 2)), "N,,2,2,EXACT,12,8,0.6666666667,0,");
  const EstimateRow mc = mc_fraction(P("W(ab)"), 2, 6, 100, 4);
  EXPECT_EQ(to_csv_row(mc).substr(0, 14), "W,ab,2,6,MC,10");
  EXPECT_EQ(to_csv_row(mc).back(), '4');
}

TEST(RandomStructure, DeterministicAndBounded) {
  const LinePattern a = random_peripheral_structure(2, 30, 3, 8);
  const LinePattern b = random_peripheral_structure(2, 30, 3, 8);
  ASSERT_EQ(a.size(), b.size());
  EXPECT_LE(a.size(), 3U);
  for (std::uint32_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.word(i).to_string(), b.word(i).to_string());
  for (std::uint32_t i = 0; i < a.size(); ++i) EXPECT_LE(a.word(i).size(), 30U);
  EXPECT_THROW(random_peripheral_structure(2, 30, 0, 1), Error);
}

TEST(RandomStructure, BallLengthsFollowSphereSizes) {
  // For r = 2 the ball of radius 12 minus the identity has 2(3^12 - 1)
  // words, 4 * 3^11 of them of length 12.
  const std::vector<Word> words = random_words(2, 12, 30000, 17);
  std::vector<std::size_t> by_len(13, 0);
  for (const Word& w : words) ++by_len[w.size()];
  EXPECT_EQ(by_len[0], 0U);
  const double total = 2 * (std::pow(3.0, 12) - 1);
  for (std::size_t len : {10U, 11U, 12U}) {
    const double p = 4 * std::pow(3.0, static_cast<double>(len) - 1) / total;
    EXPECT_NEAR(static_cast<double>(by_len[len]) / 30000.0, p, 4 * std::sqrt(p * (1 - p) / 30000.0)) << len;
  }
  for (const Word& w : random_words(2, 9, 100, 3, WordModel::kSphere)) EXPECT_EQ(w.size(), 9U);
}

TEST(RandomStructure, UniformBigIntegers) {
  Rng rng(4);
  const BigInt bound = BigInt(3) << 100;
  std::size_t low = 0;
  for (int i = 0; i < 4000; ++i) {
    const BigInt x = uniform_big(bound, rng);
    ASSERT_GE(x, 0);
    ASSERT_LT(x, bound);
    if (x < bound / 3) ++low;
  }
  EXPECT_NEAR(low / 4000.0, 1.0 / 3.0, 0.04);
}

TEST(RandomStructure, LongSampleSatisfiesH3) {
  const LinePattern p = random_peripheral_structure(2, 2000, 1, 2024, WordModel::kSphere);
  ASSERT_EQ(p.size(), 1U);
  EXPECT_TRUE(eval_property(P("H(3)"), p.word(0).to_word(), 2));
}
