#include "kwassign/keyness.hpp"

#include <algorithm>
#include <cmath>

#include "kwassign/error.hpp"

namespace kwassign {

namespace {

using u128 = unsigned __int128;

// x ln(x / E) with E = row_total * column_total / n, and 0 ln 0 = 0.
long double entropy_term(std::uint64_t x, std::uint64_t row_total,
                         std::uint64_t column_total, std::uint64_t n) {
  if (x == 0) return 0.0L;
  const long double observed_scaled = static_cast<long double>(x) * n;
  const long double expected_scaled =
      static_cast<long double>(row_total) * column_total;
  return x * std::log(observed_scaled / expected_scaled);
}

}  // namespace

void check_cell(const ContingencyCell& cell) {
  if (cell.doc_total == 0 || cell.ref_total == 0 ||
      cell.doc_count > cell.doc_total || cell.ref_count > cell.ref_total) {
    throw Error(Errc::invalid_cell,
                "invalid contingency cell a=" + std::to_string(cell.doc_count) +
                    " c=" + std::to_string(cell.doc_total) +
                    " b=" + std::to_string(cell.ref_count) +
                    " d=" + std::to_string(cell.ref_total));
  }
}

bool proportions_equal(const ContingencyCell& cell) {
  return u128(cell.doc_count) * cell.ref_total ==
         u128(cell.ref_count) * cell.doc_total;
}

bool over_represented(const ContingencyCell& cell) {
  return u128(cell.doc_count) * cell.ref_total >
         u128(cell.ref_count) * cell.doc_total;
}

double log_likelihood(const ContingencyCell& cell) {
  check_cell(cell);
  const std::uint64_t joint = cell.doc_count + cell.ref_count;
  if (joint == 0) {
    throw Error(Errc::invalid_cell,
                "log-likelihood needs a lemma count in document or reference");
  }
  if (proportions_equal(cell)) return 0.0;
  const std::uint64_t n = cell.doc_total + cell.ref_total;
  const long double g2 =
      2.0L * (entropy_term(cell.doc_count, cell.doc_total, joint, n) +
              entropy_term(cell.ref_count, cell.ref_total, joint, n));
  return std::max(0.0, static_cast<double>(g2));
}

double chi_square(const ContingencyCell& cell) {
  check_cell(cell);
  if (proportions_equal(cell)) return 0.0;
  const auto a = cell.doc_count, b = cell.ref_count;
  const auto c = cell.doc_total, d = cell.ref_total;
  const std::uint64_t n = c + d;
  const std::uint64_t present = a + b;
  const std::uint64_t absent = n - present;
  // Unequal proportions imply all four margins are non-zero.
  const u128 ad = u128(a) * d, bc = u128(b) * c;
  const long double diff = static_cast<long double>(ad > bc ? ad - bc : bc - ad);
  const long double chi2 = static_cast<long double>(n) * diff * diff /
                           (static_cast<long double>(c) * d * present * absent);
  return static_cast<double>(chi2);
}

std::string_view to_string(KeynessMethod method) {
  return method == KeynessMethod::chi_square ? "chisq" : "loglik";
}

KeynessMethod parse_keyness_method(std::string_view name) {
  if (name == "loglik" || name == "log-likelihood") return KeynessMethod::log_likelihood;
  if (name == "chisq" || name == "chi-square") return KeynessMethod::chi_square;
  throw Error(Errc::invalid_argument,
              "unknown keyness method '" + std::string(name) +
                  "' (expected loglik or chisq)");
}

double keyness(const ContingencyCell& cell, KeynessMethod method) {
  return method == KeynessMethod::chi_square ? chi_square(cell)
                                             : log_likelihood(cell);
}

std::vector<Keyword> extract_keywords(const FrequencyTable& doc,
                                      const FrequencyTable& ref,
                                      const KeywordOptions& options) {
  if (doc.total() == 0) {
    throw Error(Errc::empty_document, "cannot extract keywords from an empty document");
  }
  if (ref.total() == 0) {
    throw Error(Errc::invalid_argument, "reference table is empty");
  }
  if (options.limit == 0) {
    throw Error(Errc::invalid_argument, "keyword limit must be positive");
  }

  std::vector<Keyword> keywords;
  for (const auto& [lemma, count] : doc) {
    if (count < options.min_doc_freq) continue;
    const ContingencyCell cell{count, doc.total(), ref.count(lemma), ref.total()};
    if (!over_represented(cell)) continue;
    keywords.push_back({lemma, keyness(cell, options.method), count});
  }
  auto by_rank = [](const Keyword& x, const Keyword& y) {
    if (x.keyness != y.keyness) return x.keyness > y.keyness;
    return x.lemma < y.lemma;
  };
  if (keywords.size() > options.limit) {
    std::partial_sort(keywords.begin(),
                      keywords.begin() + static_cast<std::ptrdiff_t>(options.limit),
                      keywords.end(), by_rank);
    keywords.resize(options.limit);
  } else {
    std::sort(keywords.begin(), keywords.end(), by_rank);
  }
  return keywords;
}

}  // namespace kwassign
