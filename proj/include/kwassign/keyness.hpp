#pragma once

// Keyness statistics of a document against a reference corpus, and keyword
// extraction ranked by them.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kwassign/textpipe.hpp"

namespace kwassign {

// 2x2 contingency counts for one lemma:
//   doc_count (a) of doc_total (c) tokens in the document,
//   ref_count (b) of ref_total (d) tokens in the reference.
struct ContingencyCell {
  std::uint64_t doc_count = 0;
  std::uint64_t doc_total = 0;
  std::uint64_t ref_count = 0;
  std::uint64_t ref_total = 0;
};

// Throws Errc::invalid_cell unless 0 <= a <= c, 0 <= b <= d, c >= 1, d >= 1.
void check_cell(const ContingencyCell& cell);

// a*d == b*c, computed without overflow.
bool proportions_equal(const ContingencyCell& cell);
// a/c > b/d, computed without overflow or rounding.
bool over_represented(const ContingencyCell& cell);

// Log-likelihood G2 = 2 * (a ln(a/E1) + b ln(b/E2)) with
// E1 = c(a+b)/(c+d), E2 = d(a+b)/(c+d) and 0 ln 0 = 0. Requires a+b >= 1.
// Exactly 0 when the proportions are equal.
double log_likelihood(const ContingencyCell& cell);

// Pearson chi-square over [[a, c-a], [b, d-b]] without continuity correction.
// Cells with zero expected count contribute nothing.
double chi_square(const ContingencyCell& cell);

enum class KeynessMethod { log_likelihood, chi_square };

std::string_view to_string(KeynessMethod method);
KeynessMethod parse_keyness_method(std::string_view name);

double keyness(const ContingencyCell& cell, KeynessMethod method);

struct Keyword {
  Lemma lemma;
  double keyness = 0.0;
  std::uint64_t doc_freq = 0;

  friend bool operator==(const Keyword&, const Keyword&) = default;
};

inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

struct KeywordOptions {
  KeynessMethod method = KeynessMethod::log_likelihood;
  std::size_t limit = kUnlimited;
  std::uint64_t min_doc_freq = 1;
};

// Lemmas of `doc` that are relatively more frequent than in `ref`, ranked by
// keyness descending with lemma-ascending ties, truncated to options.limit.
// Throws Errc::empty_document when doc is empty and Errc::invalid_argument
// when ref is empty or limit is 0.
std::vector<Keyword> extract_keywords(const FrequencyTable& doc,
                                      const FrequencyTable& ref,
                                      const KeywordOptions& options = {});

}  // namespace kwassign
