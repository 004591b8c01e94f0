#pragma once

// Text preprocessing: multiword marking, tokenization, lemmatization and
// stopword filtering down to a lemma frequency table.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace kwassign {

using Lemma = std::string;

// Lowercases UTF-8 text. Covers ASCII, Latin-1, Latin Extended-A, Greek and
// Cyrillic; other code points pass through unchanged. Invalid byte sequences
// are copied verbatim.
std::string fold_case(std::string_view text);

// Lemma -> occurrence count, plus the sum of all counts. Zero counts are never
// stored. Iteration order is lexicographic by lemma.
class FrequencyTable {
 public:
  using Counts = std::map<Lemma, std::uint64_t, std::less<>>;

  FrequencyTable() = default;

  void add(std::string_view lemma, std::uint64_t n = 1);
  std::uint64_t count(std::string_view lemma) const;
  bool contains(std::string_view lemma) const { return counts_.contains(lemma); }

  std::uint64_t total() const noexcept { return total_; }
  std::size_t size() const noexcept { return counts_.size(); }
  bool empty() const noexcept { return counts_.empty(); }

  const Counts& counts() const noexcept { return counts_; }
  auto begin() const { return counts_.begin(); }
  auto end() const { return counts_.end(); }

  FrequencyTable& operator+=(const FrequencyTable& other);

  friend bool operator==(const FrequencyTable&, const FrequencyTable&) = default;

 private:
  Counts counts_;
  std::uint64_t total_ = 0;
};

// Surface form -> lemma. Lookup falls back to the form itself.
class LemmaMap {
 public:
  LemmaMap() = default;

  void add(std::string_view surface, std::string_view lemma);
  const std::string& lookup(const std::string& surface) const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::unordered_map<std::string, std::string> entries_;
};

class StopList {
 public:
  StopList() = default;
  StopList(std::initializer_list<std::string_view> lemmas);

  void add(std::string_view lemma);
  bool contains(const std::string& lemma) const { return lemmas_.contains(lemma); }
  std::size_t size() const noexcept { return lemmas_.size(); }

 private:
  std::unordered_set<std::string> lemmas_;
};

// Multiword expressions of two or more words. Expressions are stored
// case-folded and whitespace-normalized; duplicates are dropped.
class MultiwordList {
 public:
  MultiwordList() = default;
  MultiwordList(std::initializer_list<std::string_view> expressions);

  // Returns false when the expression was a duplicate. Throws on expressions
  // with fewer than two words.
  bool add(std::string_view expression);

  std::size_t size() const noexcept { return expressions_.size(); }
  bool empty() const noexcept { return expressions_.empty(); }

  // Expressions starting with `first_word`, longest first.
  const std::vector<std::vector<std::string>>* starting_with(
      const std::string& first_word) const;

 private:
  std::vector<std::vector<std::string>> expressions_;
  std::unordered_map<std::string, std::vector<std::vector<std::string>>>
      by_first_word_;
};

// Rewrites every occurrence of a listed expression with underscores joining
// its words. Matching is case-insensitive over whitespace-separated words,
// greedy longest-match left to right. Punctuation attached to the outer
// edges of a match is kept; text outside matches is unchanged.
std::string mark_multiwords(std::string_view text, const MultiwordList& mw);

// Splits on whitespace and punctuation, lowercases, keeps underscores and
// word-internal hyphens, drops tokens without any letter, digit or
// underscore-joined content.
std::vector<std::string> tokenize(std::string_view text);

std::vector<Lemma> lemmatize(std::span<const std::string> tokens,
                             const LemmaMap& map);

FrequencyTable build_table(std::span<const Lemma> lemmas, const StopList& stop);

FrequencyTable merge_tables(std::span<const FrequencyTable> tables);

// The per-language resource bundle applied to every text.
struct Pipeline {
  MultiwordList multiwords;
  LemmaMap lemmas;
  StopList stopwords;

  FrequencyTable process(std::string_view text) const;
};

}  // namespace kwassign
