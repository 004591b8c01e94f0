#include <gtest/gtest.h>

#include <random>

#include "kwassign/evaluator.hpp"

using namespace kwassign;

namespace {

const std::string kData = KWASSIGN_TEST_DATA;

DescriptorId id(const char* s) { return DescriptorId(s); }

EvalDocument edoc(const char* name, std::initializer_list<const char*> ranked,
                  std::initializer_list<const char*> gold) {
  EvalDocument d{name, {}, {}};
  for (auto r : ranked) d.ranked.push_back(id(r));
  for (auto g : gold) d.gold.insert(id(g));
  return d;
}

EvalConfig at(std::vector<std::size_t> ranks, MatchMode mode = MatchMode::strict,
              Aggregation agg = Aggregation::micro) {
  EvalConfig c;
  c.ranks = std::move(ranks);
  c.mode = mode;
  c.aggregation = agg;
  return c;
}

}  // namespace

TEST(Evaluate, HandCountedStrict) {
  const std::vector<EvalDocument> docs = {edoc("d", {"D3", "D1", "D4"}, {"D1", "D2"})};
  const auto r = evaluate(docs, nullptr, at({3}));
  ASSERT_EQ(r.results.size(), 1u);
  EXPECT_DOUBLE_EQ(r.results[0].recall, 0.5);
  EXPECT_DOUBLE_EQ(r.results[0].precision, 1.0 / 3.0);
  EXPECT_EQ(r.doc_count, 1u);
  EXPECT_DOUBLE_EQ(r.gold_avg, 2.0);
}

TEST(Evaluate, RelaxedCreditsBroaderTerm) {
  const auto t = load_thesaurus(kData + "/mini_thesaurus.tsv");
  // Gold PLUTONIUM; the system found RADIOACTIVE MATERIALS.
  const std::vector<EvalDocument> docs = {edoc("d", {"T200", "T100"}, {"T201"})};
  const auto strict = evaluate(docs, &t, at({1, 2}));
  const auto relaxed = evaluate(docs, &t, at({1, 2}, MatchMode::relaxed));
  EXPECT_DOUBLE_EQ(strict.results[0].recall, 0.0);
  EXPECT_DOUBLE_EQ(relaxed.results[0].recall, 1.0);
  EXPECT_DOUBLE_EQ(relaxed.results[1].precision, 0.5);
}

TEST(Evaluate, GoldCreditedOnceAndSlotCreditsOnce) {
  const auto t = load_thesaurus(kData + "/mini_thesaurus.tsv");
  // T201 exact, then its BT T200 must not credit T201 again.
  const std::vector<EvalDocument> docs = {edoc("d", {"T201", "T200"}, {"T201"})};
  const auto hits = cumulative_hits(docs[0], &t, MatchMode::relaxed, 2);
  EXPECT_EQ(hits, (std::vector<std::size_t>{1, 1}));
  // T200 neighbours both gold T201 and T202 but credits only one.
  const auto two = edoc("d", {"T200"}, {"T201", "T202"});
  EXPECT_EQ(cumulative_hits(two, &t, MatchMode::relaxed, 3), (std::vector<std::size_t>{1, 1, 1}));
}

TEST(Evaluate, PerfectAssignment) {
  const std::vector<EvalDocument> docs = {edoc("d", {"A", "B"}, {"B", "A"})};
  const auto r = evaluate(docs, nullptr, at({2}));
  EXPECT_DOUBLE_EQ(r.results[0].recall, 1.0);
  EXPECT_DOUBLE_EQ(r.results[0].precision, 1.0);
}

TEST(Evaluate, MicroVersusMacro) {
  const std::vector<EvalDocument> docs = {edoc("a", {"A", "X"}, {"A"}),
                                          edoc("b", {"X", "Y"}, {"B", "C", "D"})};
  const auto micro = evaluate(docs, nullptr, at({2}));
  EXPECT_DOUBLE_EQ(micro.results[0].recall, 1.0 / 4.0);
  EXPECT_DOUBLE_EQ(micro.results[0].precision, 1.0 / 4.0);
  const auto macro = evaluate(docs, nullptr, at({2}, MatchMode::strict, Aggregation::macro));
  EXPECT_DOUBLE_EQ(macro.results[0].recall, 0.5);
  EXPECT_DOUBLE_EQ(macro.results[0].precision, 0.25);
}

TEST(Evaluate, ShortRankingCountsMissingSlots) {
  const std::vector<EvalDocument> docs = {edoc("a", {"A"}, {"A"})};
  const auto r = evaluate(docs, nullptr, at({1, 5}));
  EXPECT_DOUBLE_EQ(r.results[1].precision, 0.2);
  EXPECT_DOUBLE_EQ(r.results[1].recall, 1.0);
}

TEST(Evaluate, Exclusions) {
  std::vector<EvalDocument> docs = {edoc("a", {"A"}, {"A"}), edoc("b", {"A"}, {}),
                                    edoc("c", {"A"}, {"Z"})};
  auto cfg = at({1});
  cfg.trained_only = DescriptorSet{id("A")};
  const auto r = evaluate(docs, nullptr, cfg);
  EXPECT_EQ(r.doc_count, 1u);
  EXPECT_EQ(r.excluded_empty_gold, 1u);
  EXPECT_EQ(r.excluded_untrained, 1u);
  EXPECT_DOUBLE_EQ(r.results[0].recall, 1.0);
}

TEST(Evaluate, Errors) {
  const auto t = load_thesaurus(kData + "/mini_thesaurus.tsv");
  const std::vector<EvalDocument> docs = {edoc("a", {"T100"}, {"T100"})};
  EXPECT_THROW(evaluate(docs, nullptr, at({1}, MatchMode::relaxed)), Error);
  EXPECT_THROW(evaluate(docs, nullptr, at({2, 2})), Error);
  EXPECT_THROW(evaluate(docs, nullptr, at({0, 1})), Error);
  const std::vector<EvalDocument> bad = {edoc("a", {"NOPE"}, {"T100"})};
  try {
    evaluate(bad, &t, at({1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unknown_id);
  }
}

TEST(EvaluateVarying, OneDocument) {
  const std::vector<EvalDocument> docs = {edoc("a", {"D1", "D5", "D2"}, {"D1", "D2"})};
  const auto r = evaluate_varying(docs, nullptr, at({}, MatchMode::strict, Aggregation::macro));
  ASSERT_EQ(r.results.size(), 1u);
  EXPECT_TRUE(r.varying);
  EXPECT_DOUBLE_EQ(r.results[0].recall, 0.5);
  EXPECT_DOUBLE_EQ(r.results[0].precision, 0.5);
}

TEST(EvaluateVarying, MacroMeanOfTwo) {
  const std::vector<EvalDocument> docs = {edoc("a", {"D1", "D5"}, {"D1", "D2"}),
                                          edoc("b", {"D3"}, {"D3"})};
  const auto r = evaluate_varying(docs, nullptr, at({}, MatchMode::strict, Aggregation::macro));
  EXPECT_DOUBLE_EQ(r.results[0].recall, 0.75);
  EXPECT_DOUBLE_EQ(r.results[0].precision, 0.75);
}

TEST(Evaluate, MonotoneInRank) {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 50; ++round) {
    std::vector<EvalDocument> docs;
    for (int d = 0; d < 5; ++d) {
      EvalDocument doc{"d" + std::to_string(d), {}, {}};
      for (int i = 0; i < 12; ++i) doc.ranked.push_back(DescriptorId("X" + std::to_string(rng() % 20)));
      for (int i = 0; i < 3; ++i) doc.gold.insert(DescriptorId("X" + std::to_string(rng() % 20)));
      docs.push_back(doc);
    }
    const auto r = evaluate(docs, nullptr, at({1, 2, 3, 5, 7, 10}));
    for (std::size_t i = 1; i < r.results.size(); ++i)
      EXPECT_GE(r.results[i].recall, r.results[i - 1].recall);
  }
}

TEST(RandomBaseline, ClosedForm) {
  EXPECT_DOUBLE_EQ(random_baseline(2870), 1.0 / 2870.0);
  EXPECT_EQ(format_percent(random_baseline(2870), 3), "0.035%");
  EXPECT_DOUBLE_EQ(random_baseline(1), 1.0);
  EXPECT_DOUBLE_EQ(random_baseline(100, 7), 0.01);
  EXPECT_THROW(random_baseline(0), Error);
  EXPECT_THROW(random_baseline(5, 0), Error);
  EXPECT_THROW(random_baseline(5, 6), Error);
}

TEST(Format, TableShape) {
  const std::vector<EvalDocument> docs = {edoc("a", {"A", "B"}, {"A", "C"})};
  const auto strict = evaluate(docs, nullptr, at({1, 2}));
  const auto varying = evaluate_varying(docs, nullptr, at({}));
  const auto table = format_eval_table(strict, &strict, &varying, &varying);
  EXPECT_NE(table.find("Recall"), std::string::npos);
  EXPECT_NE(table.find("Precision"), std::string::npos);
  EXPECT_NE(table.find("Varying"), std::string::npos);
  EXPECT_NE(table.find("50%"), std::string::npos);
  EXPECT_NE(table.find("100%"), std::string::npos);
  const std::vector<EvalReport> reports = {strict};
  const auto tsv = format_eval_tsv(reports);
  EXPECT_NE(tsv.find("strict\tmicro\t1\t0.5\t1"), std::string::npos);
}
