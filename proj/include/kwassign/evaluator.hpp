#pragma once

// Recall and precision of ranked descriptor assignments against manually
// assigned gold descriptors, at fixed ranks or at rank = |gold|, crediting
// either exact matches only (strict) or also thesaurus neighbours (relaxed).

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kwassign/thesaurus.hpp"

namespace kwassign {

enum class MatchMode { strict, relaxed };
enum class Aggregation { micro, macro };

std::string_view to_string(MatchMode mode);
std::string_view to_string(Aggregation aggregation);
MatchMode parse_match_mode(std::string_view name);
Aggregation parse_aggregation(std::string_view name);

struct EvalDocument {
  std::string doc_id;
  std::vector<DescriptorId> ranked;  // best first
  DescriptorSet gold;
};

std::vector<std::size_t> default_ranks();  // 1,2,3,5,7,10,15,20,25,30,50,100

struct EvalConfig {
  std::vector<std::size_t> ranks = default_ranks();  // strictly increasing
  MatchMode mode = MatchMode::strict;
  Aggregation aggregation = Aggregation::micro;
  // When set, documents with no gold descriptor in this set are excluded.
  std::optional<DescriptorSet> trained_only;
};

struct RankResult {
  std::size_t rank = 0;  // 0 in the varying-rank report
  double recall = 0.0;
  double precision = 0.0;
};

struct EvalReport {
  MatchMode mode = MatchMode::strict;
  Aggregation aggregation = Aggregation::micro;
  bool varying = false;
  std::vector<RankResult> results;
  std::size_t doc_count = 0;
  std::size_t excluded_empty_gold = 0;
  std::size_t excluded_untrained = 0;
  double gold_avg = 0.0;
};

// Number of hits among the first min(k, ranked.size()) slots, for every k in
// 1..max_rank. A gold descriptor is credited at most once and every slot
// credits at most one gold descriptor. Slots are matched greedily in rank
// order: an exact gold match first, otherwise (relaxed mode) the
// smallest-id uncredited gold descriptor the slot is a neighbour of.
// `thesaurus` may be null in strict mode.
std::vector<std::size_t> cumulative_hits(const EvalDocument& doc,
                                         const Thesaurus* thesaurus,
                                         MatchMode mode, std::size_t max_rank);

// Micro: precision = hits / (k * docs), recall = hits / total gold.
// Macro: mean of per-document hits / k and hits / |gold|.
// Throws Errc::unknown_id for ids missing from the thesaurus (when given) and
// Errc::invalid_argument for a relaxed evaluation without a thesaurus or
// ranks that are not strictly increasing positive integers.
EvalReport evaluate(std::span<const EvalDocument> docs, const Thesaurus* thesaurus,
                    const EvalConfig& config);

// Per document k = |gold|, so per-document recall equals precision.
// config.ranks is ignored.
EvalReport evaluate_varying(std::span<const EvalDocument> docs,
                            const Thesaurus* thesaurus, const EvalConfig& config);

// Expected precision of assigning descriptors uniformly at random against a
// single gold descriptor: 1 / num_descriptors. Throws Errc::invalid_argument
// unless 1 <= k <= num_descriptors.
double random_baseline(std::size_t num_descriptors, std::size_t k = 1);

// 0.000348 -> "0.035%" with decimals = 3.
std::string format_percent(double fraction, int decimals);

// Table with columns Rank | Recall | Precision for each report side by side
// (strict first), percentages rounded to whole percent, and a final
// "Varying" row when varying reports are given.
std::string format_eval_table(const EvalReport& strict,
                              const EvalReport* relaxed,
                              const EvalReport* strict_varying,
                              const EvalReport* relaxed_varying);

// mode TAB aggregation TAB rank TAB recall TAB precision, unrounded.
std::string format_eval_tsv(std::span<const EvalReport> reports);

}  // namespace kwassign
