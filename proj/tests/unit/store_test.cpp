#include <gtest/gtest.h>

#include <sstream>

#include "kwassign/store.hpp"
#include "tempdir.hpp"

using namespace kwassign;
using kwassign::testing::slurp;
using kwassign::testing::spit;
using kwassign::testing::TempDir;

namespace {

DescriptorId id(const char* s) { return DescriptorId(s); }

AssociateStore sample_store() {
  StoreHeader h;
  h.created_from = "whole training collection";
  h.parameters = {{"min_tokens", "1000"}, {"max_list_len", "500"}, {"custom.key", "kept"}};
  AssociateStore s(h);
  s.add({id("T100"), "es", {{"pesca", 2084.08}, {"buque", 1044.5}, {"tac", 0.1}}, 5120});
  s.add({id("T300"), "es", {{"nuclear", 97.25}}, 1200});
  s.add({id("T100"), "en", {{"fishing", 1.0 / 3.0}}, 4000});
  return s;
}

const char* kMeta = "format_version=1\nmethod=loglik\ncreated_from=x\nlanguages=es\n";

}  // namespace

TEST(Store, RoundTripIsExact) {
  TempDir dir;
  const auto s = sample_store();
  save_store(s, dir.path());
  Warnings w;
  const auto loaded = load_store(dir.path(), &w);
  EXPECT_TRUE(w.empty());
  EXPECT_EQ(loaded, s);
  EXPECT_EQ(loaded.find("en", id("T100"))->entries[0].weight, 1.0 / 3.0);
  EXPECT_EQ(loaded.header().parameters.at("custom.key"), "kept");
}

TEST(Store, SavesAreByteIdentical) {
  TempDir a, b;
  save_store(sample_store(), a.path());
  save_store(sample_store(), b.path());
  for (const auto* name : {"store.meta", "associates.es.tsv", "associates.en.tsv"})
    EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
  const auto es = slurp(a / "associates.es.tsv");
  EXPECT_TRUE(es.starts_with("#method=loglik\n#min_tokens=1000\n#max_list_len=500\n#reference="));
  EXPECT_NE(es.find("T100\tpesca\t2084.08\n"), std::string::npos);
}

TEST(Store, TwoLanguagesGiveThreeFiles) {
  TempDir dir;
  save_store(sample_store(), dir.path());
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir.path())) ++files;
  EXPECT_EQ(files, 3u);
  // Re-saving a one-language store removes the stale file.
  AssociateStore es_only;
  es_only.add({id("T1"), "es", {{"a", 1.0}}, 1});
  save_store(es_only, dir.path());
  EXPECT_FALSE(fs::exists(dir / "associates.en.tsv"));
}

TEST(Store, NegativeWeightNamesLine) {
  TempDir dir;
  spit(dir / "store.meta", kMeta);
  spit(dir / "associates.es.tsv", "#method=loglik\nT1\tpesca\t5\nT1\tmar\t-3.2\n");
  try {
    load_store(dir.path());
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("associates.es.tsv:3:"), std::string::npos);
  }
}

TEST(Store, MalformedLinesRejected) {
  TempDir dir;
  spit(dir / "store.meta", kMeta);
  for (const char* body : {"T1\tpesca\n", "T1\tpesca\tabc\n", "T1\tpesca\tinf\n",
                           "T1\tpesca\t0\n", "T1\tpesca\t2\nT1\tpesca\t1\n"}) {
    spit(dir / "associates.es.tsv", body);
    EXPECT_THROW(load_store(dir.path()), ParseError) << body;
  }
}

TEST(Store, VersionMismatch) {
  TempDir dir;
  spit(dir / "store.meta", "format_version=9\nlanguages=\n");
  try {
    load_store(dir.path());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::version_mismatch);
  }
}

TEST(Store, ShuffledEqualsSortedAfterLoad) {
  TempDir sorted, shuffled;
  spit(sorted / "store.meta", kMeta);
  spit(shuffled / "store.meta", kMeta);
  spit(sorted / "associates.es.tsv", "T1\tc\t3\nT1\ta\t2\nT1\tb\t2\nT2\tz\t1\n");
  spit(shuffled / "associates.es.tsv", "T2\tz\t1\nT1\ta\t2\nT1\tc\t3\nT1\tb\t2\n");
  Warnings ws, wu;
  const auto a = load_store(sorted.path(), &ws);
  const auto b = load_store(shuffled.path(), &wu);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(ws.empty());
  EXPECT_FALSE(wu.empty());
}

TEST(Resources, LemmaStopMultiword) {
  TempDir dir;
  spit(dir / "lemmas.tsv", "# comment\nbuques\tbuque\nEnarbolan\tenarbolar\n");
  spit(dir / "stop.txt", "el\n\nla\n");
  spit(dir / "mw.txt", "power plant\nnuclear power plant\n");
  const auto lemmas = load_lemma_map(dir / "lemmas.tsv");
  EXPECT_EQ(lemmas.lookup("buques"), "buque");
  EXPECT_EQ(lemmas.lookup("enarbolan"), "enarbolar");
  EXPECT_TRUE(load_stop_list(dir / "stop.txt").contains("la"));
  EXPECT_EQ(load_multiword_list(dir / "mw.txt").size(), 2u);
  spit(dir / "bad.tsv", "onlyone\n");
  EXPECT_THROW(load_lemma_map(dir / "bad.tsv"), ParseError);
  spit(dir / "badmw.txt", "ok words\nsingle\n");
  EXPECT_THROW(load_multiword_list(dir / "badmw.txt"), ParseError);
}

TEST(Resources, FrequencyTableRoundTrip) {
  TempDir dir;
  FrequencyTable t;
  t.add("pesca", 3);
  t.add("año", 2);
  save_frequency_table(t, dir / "ref.tsv");
  EXPECT_EQ(load_frequency_table(dir / "ref.tsv"), t);
  EXPECT_EQ(slurp(dir / "ref.tsv"), "año\t2\npesca\t3\n");
}

TEST(Manifest, LoadsAndResolvesPaths) {
  TempDir dir;
  spit(dir / "docs/a.txt", "La pesca del buque.");
  spit(dir / "docs/b.txt", "Seguridad nuclear.");
  spit(dir / "m.tsv", "a\tes\tlaw\tdocs/a.txt\tT100\nb\tes\t-\tdocs/b.txt\tT300,T200\n");
  const auto m = load_manifest(dir / "m.tsv");
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].subcorpus, "law");
  EXPECT_EQ(m[1].subcorpus, "");
  EXPECT_EQ(m[1].descriptors, (DescriptorSet{id("T200"), id("T300")}));
  EXPECT_EQ(m[0].path, dir / "docs/a.txt");
  PipelineSet ps;
  ps.by_language["es"].stopwords.add("la");
  ps.by_language["es"].stopwords.add("del");
  const auto corpus = load_corpus(m, ps);
  EXPECT_EQ(corpus[0].table.total(), 2u);
  EXPECT_EQ(corpus[0].table.count("pesca"), 1u);

  spit(dir / "dup.tsv", "a\tes\t-\tdocs/a.txt\tT1\na\tes\t-\tdocs/b.txt\tT1\n");
  EXPECT_THROW(load_manifest(dir / "dup.tsv"), ParseError);
  spit(dir / "short.tsv", "a\tes\t-\tdocs/a.txt\n");
  EXPECT_THROW(load_manifest(dir / "short.tsv"), ParseError);
}

TEST(Assignments, WriteReadRoundTrip) {
  Assignment a{"doc-1", "es", {{id("T300"), 97.5, 1}, {id("T100"), 62.0, 2}}};
  Assignment b{"doc-2", "es", {}};
  std::ostringstream out;
  write_assignment(out, a, nullptr, "en");
  write_assignment(out, b, nullptr, "en");
  EXPECT_TRUE(out.str().starts_with("#doc_id=doc-1\tlanguage=es\n1\t97.5\tT300\tT300\n"));
  std::istringstream in(out.str());
  const auto back = read_assignments(in, "mem");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0], a);
  EXPECT_EQ(back[1], b);
  std::istringstream bad("1\t2\tT1\tx\n");
  EXPECT_THROW(read_assignments(bad, "mem"), ParseError);
}
