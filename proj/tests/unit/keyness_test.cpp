#include <gtest/gtest.h>

#include <random>

#include "kwassign/error.hpp"
#include "kwassign/keyness.hpp"

using namespace kwassign;

namespace {

// Reference values computed with 50-digit arithmetic in separate code.
constexpr double kG2_150 = 580.59337942878424968;
constexpr double kChi2_150 = 1245.1952782023348834;
constexpr double kG2_zero_a = 0.95310179804324860044;
constexpr double kChi2_zero_a = 0.50228310502283105023;
constexpr double kG2_alpha = 9.5109232486115178143;
constexpr double kG2_beta = 2.2482675307663371566;

void expect_rel(double actual, double expected, double tol = 1e-12) {
  EXPECT_NEAR(actual, expected, std::abs(expected) * tol) << "expected " << expected;
}

FrequencyTable table_of(std::initializer_list<std::pair<const char*, std::uint64_t>> entries) {
  FrequencyTable t;
  for (const auto& [lemma, n] : entries) t.add(lemma, n);
  return t;
}

}  // namespace

TEST(LogLikelihood, IndependenceIsExactlyZero) {
  EXPECT_EQ(log_likelihood({10, 1000, 100, 10000}), 0.0);
  EXPECT_EQ(chi_square({10, 1000, 100, 10000}), 0.0);
}

TEST(LogLikelihood, MatchesOracle) {
  expect_rel(log_likelihood({150, 10000, 25, 100000}), kG2_150);
  expect_rel(chi_square({150, 10000, 25, 100000}), kChi2_150);
}

TEST(LogLikelihood, ZeroCountConvention) {
  expect_rel(log_likelihood({0, 100, 5, 1000}), kG2_zero_a);
  expect_rel(log_likelihood({0, 100, 5, 1000}), 2.0 * 5.0 * std::log(5.0 / (1000.0 * 5.0 / 1100.0)));
  expect_rel(chi_square({0, 100, 5, 1000}), kChi2_zero_a);
}

TEST(ChiSquare, DegenerateCellIsFinite) {
  const double v = chi_square({7, 7, 3, 3});
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_EQ(v, 0.0);
  EXPECT_TRUE(std::isfinite(chi_square({7, 7, 0, 3})));
  EXPECT_TRUE(std::isfinite(log_likelihood({7, 7, 3, 3})));
}

TEST(Keyness, InvalidCells) {
  EXPECT_THROW(log_likelihood({5, 4, 0, 10}), Error);
  EXPECT_THROW(log_likelihood({1, 10, 11, 10}), Error);
  EXPECT_THROW(chi_square({0, 0, 1, 10}), Error);
  EXPECT_THROW(chi_square({0, 10, 1, 0}), Error);
  EXPECT_THROW(log_likelihood({0, 10, 0, 10}), Error);
  try {
    check_cell({5, 4, 0, 10});
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_cell);
  }
}

TEST(Keyness, SymmetricUnderSwap) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t c = 1 + rng() % 5000, d = 1 + rng() % 50000;
    const std::uint64_t a = rng() % (c + 1), b = rng() % (d + 1);
    if (a + b == 0) continue;
    const ContingencyCell x{a, c, b, d}, y{b, d, a, c};
    expect_rel(log_likelihood(x), log_likelihood(y), 1e-12);
    expect_rel(chi_square(x), chi_square(y), 1e-12);
  }
}

TEST(Keyness, LogLikelihoodScalesLinearly) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t c = 1 + rng() % 2000, d = 1 + rng() % 20000;
    const std::uint64_t a = rng() % (c + 1), b = rng() % (d + 1);
    if (a + b == 0) continue;
    const std::uint64_t k = 2 + rng() % 50;
    const double g = log_likelihood({a, c, b, d});
    const double gk = log_likelihood({a * k, c * k, b * k, d * k});
    if (g == 0.0) {
      EXPECT_EQ(gk, 0.0);
    } else {
      EXPECT_NEAR(gk, g * static_cast<double>(k), g * k * 1e-9);
    }
  }
}

TEST(Keyness, ZeroExactlyWhenProportionsEqual) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t c = 1 + rng() % 300, a = rng() % (c + 1);
    const std::uint64_t m = 1 + rng() % 40;
    const ContingencyCell equal{a, c, a * m, c * m};
    if (a == 0) continue;
    EXPECT_TRUE(proportions_equal(equal));
    EXPECT_EQ(log_likelihood(equal), 0.0);
    EXPECT_EQ(chi_square(equal), 0.0);
    const ContingencyCell off{a, c, a * m - 1, c * m};
    EXPECT_GT(log_likelihood(off), 0.0);
    EXPECT_GT(chi_square(off), 0.0);
  }
}

TEST(Keyness, MethodNames) {
  EXPECT_EQ(parse_keyness_method("loglik"), KeynessMethod::log_likelihood);
  EXPECT_EQ(parse_keyness_method("chisq"), KeynessMethod::chi_square);
  EXPECT_EQ(to_string(KeynessMethod::chi_square), "chisq");
  EXPECT_THROW(parse_keyness_method("tfidf"), Error);
}

TEST(ExtractKeywords, SameRelativeFrequencyGivesNothing) {
  const auto doc = table_of({{"a", 1}});
  const auto ref = table_of({{"a", 10}});
  EXPECT_TRUE(extract_keywords(doc, ref).empty());
}

TEST(ExtractKeywords, HandComputedRanking) {
  const auto doc = table_of({{"alpha", 6}, {"beta", 3}, {"gamma", 1}});
  const auto ref = table_of({{"alpha", 10}, {"beta", 10}, {"gamma", 20}, {"delta", 35}, {"eps", 25}});
  const auto kw = extract_keywords(doc, ref);
  ASSERT_EQ(kw.size(), 2u);
  EXPECT_EQ(kw[0].lemma, "alpha");
  EXPECT_EQ(kw[0].doc_freq, 6u);
  expect_rel(kw[0].keyness, kG2_alpha);
  EXPECT_EQ(kw[1].lemma, "beta");
  expect_rel(kw[1].keyness, kG2_beta);
}

TEST(ExtractKeywords, SortedFilteredAndTruncated) {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 50; ++round) {
    FrequencyTable doc, ref;
    for (int i = 0; i < 30; ++i) doc.add("w" + std::to_string(rng() % 12), 1 + rng() % 5);
    for (int i = 0; i < 80; ++i) ref.add("w" + std::to_string(rng() % 20), 1 + rng() % 9);
    const auto kw = extract_keywords(doc, ref);
    for (std::size_t i = 0; i < kw.size(); ++i) {
      const auto a = doc.count(kw[i].lemma), b = ref.count(kw[i].lemma);
      EXPECT_GT(a * ref.total(), b * doc.total());
      EXPECT_GE(kw[i].keyness, 0.0);
      if (i > 0) {
        EXPECT_TRUE(kw[i - 1].keyness > kw[i].keyness ||
                    (kw[i - 1].keyness == kw[i].keyness && kw[i - 1].lemma < kw[i].lemma));
      }
    }
    KeywordOptions opt;
    opt.limit = 3;
    const auto top = extract_keywords(doc, ref, opt);
    ASSERT_EQ(top.size(), std::min<std::size_t>(3, kw.size()));
    for (std::size_t i = 0; i < top.size(); ++i) EXPECT_EQ(top[i], kw[i]);
  }
}

TEST(ExtractKeywords, TiesBreakByLemma) {
  const auto doc = table_of({{"zeta", 2}, {"eta", 2}, {"theta", 2}});
  const auto ref = table_of({{"other", 50}});
  const auto kw = extract_keywords(doc, ref);
  ASSERT_EQ(kw.size(), 3u);
  EXPECT_EQ(kw[0].lemma, "eta");
  EXPECT_EQ(kw[1].lemma, "theta");
  EXPECT_EQ(kw[2].lemma, "zeta");
}

TEST(ExtractKeywords, MinDocFreqAndChiSquare) {
  const auto doc = table_of({{"alpha", 6}, {"beta", 3}, {"gamma", 1}});
  const auto ref = table_of({{"alpha", 10}, {"beta", 10}, {"gamma", 20}, {"delta", 35}, {"eps", 25}});
  KeywordOptions opt;
  opt.min_doc_freq = 4;
  const auto kw = extract_keywords(doc, ref, opt);
  ASSERT_EQ(kw.size(), 1u);
  EXPECT_EQ(kw[0].lemma, "alpha");
  opt = {};
  opt.method = KeynessMethod::chi_square;
  const auto chi = extract_keywords(doc, ref, opt);
  ASSERT_EQ(chi.size(), 2u);
  EXPECT_DOUBLE_EQ(chi[0].keyness, chi_square({6, 10, 10, 100}));
}

TEST(ExtractKeywords, Errors) {
  const auto ref = table_of({{"a", 1}});
  try {
    extract_keywords(FrequencyTable{}, ref);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::empty_document);
  }
  EXPECT_THROW(extract_keywords(ref, FrequencyTable{}), Error);
  KeywordOptions opt;
  opt.limit = 0;
  EXPECT_THROW(extract_keywords(ref, ref, opt), Error);
}
