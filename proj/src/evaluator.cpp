#include "kwassign/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "kwassign/error.hpp"
#include "strings.hpp"

namespace kwassign {

std::string_view to_string(MatchMode mode) {
  return mode == MatchMode::relaxed ? "relaxed" : "strict";
}

std::string_view to_string(Aggregation aggregation) {
  return aggregation == Aggregation::macro ? "macro" : "micro";
}

MatchMode parse_match_mode(std::string_view name) {
  if (name == "strict") return MatchMode::strict;
  if (name == "relaxed") return MatchMode::relaxed;
  throw Error(Errc::invalid_argument,
              "unknown mode '" + std::string(name) + "' (expected strict or relaxed)");
}

Aggregation parse_aggregation(std::string_view name) {
  if (name == "micro") return Aggregation::micro;
  if (name == "macro") return Aggregation::macro;
  throw Error(Errc::invalid_argument, "unknown aggregation '" + std::string(name) +
                                          "' (expected micro or macro)");
}

std::vector<std::size_t> default_ranks() {
  return {1, 2, 3, 5, 7, 10, 15, 20, 25, 30, 50, 100};
}

std::vector<std::size_t> cumulative_hits(const EvalDocument& doc,
                                         const Thesaurus* thesaurus,
                                         MatchMode mode, std::size_t max_rank) {
  if (mode == MatchMode::relaxed && thesaurus == nullptr)
    throw Error(Errc::invalid_argument, "relaxed evaluation needs a thesaurus");

  std::vector<std::size_t> hits(max_rank, 0);
  DescriptorSet uncredited = doc.gold;
  std::size_t running = 0;
  for (std::size_t slot = 0; slot < max_rank; ++slot) {
    if (slot < doc.ranked.size() && !uncredited.empty()) {
      const auto& assigned = doc.ranked[slot];
      if (uncredited.erase(assigned) > 0) {
        ++running;
      } else if (mode == MatchMode::relaxed) {
        // Neighbourhood is symmetric: assigned is a neighbour of g exactly
        // when g is a neighbour of assigned.
        for (const auto& g : thesaurus->neighbors(assigned)) {
          if (uncredited.erase(g) > 0) {
            ++running;
            break;
          }
        }
      }
    }
    hits[slot] = running;
  }
  return hits;
}

namespace {

struct Prepared {
  std::vector<const EvalDocument*> docs;
  std::size_t excluded_empty_gold = 0;
  std::size_t excluded_untrained = 0;
  double gold_avg = 0.0;
};

Prepared prepare(std::span<const EvalDocument> docs, const Thesaurus* thesaurus,
                 const EvalConfig& config) {
  if (config.mode == MatchMode::relaxed && thesaurus == nullptr)
    throw Error(Errc::invalid_argument, "relaxed evaluation needs a thesaurus");

  if (thesaurus != nullptr) {
    std::set<std::string> unknown;
    for (const auto& doc : docs) {
      for (const auto& id : doc.ranked)
        if (!thesaurus->contains(id)) unknown.insert(doc.doc_id + ": " + id.str());
      for (const auto& id : doc.gold)
        if (!thesaurus->contains(id)) unknown.insert(doc.doc_id + ": " + id.str());
    }
    if (!unknown.empty()) {
      std::string msg = "unknown descriptors in evaluation input:";
      for (const auto& u : unknown) msg += " " + u + ";";
      msg.pop_back();
      throw Error(Errc::unknown_id, msg);
    }
  }

  Prepared p;
  std::size_t gold_total = 0;
  for (const auto& doc : docs) {
    if (doc.gold.empty()) {
      ++p.excluded_empty_gold;
      continue;
    }
    if (config.trained_only &&
        std::none_of(doc.gold.begin(), doc.gold.end(), [&](const auto& g) {
          return config.trained_only->contains(g);
        })) {
      ++p.excluded_untrained;
      continue;
    }
    gold_total += doc.gold.size();
    p.docs.push_back(&doc);
  }
  if (!p.docs.empty())
    p.gold_avg = static_cast<double>(gold_total) / static_cast<double>(p.docs.size());
  return p;
}

EvalReport make_report(const EvalConfig& config, const Prepared& p, bool varying) {
  EvalReport report;
  report.mode = config.mode;
  report.aggregation = config.aggregation;
  report.varying = varying;
  report.doc_count = p.docs.size();
  report.excluded_empty_gold = p.excluded_empty_gold;
  report.excluded_untrained = p.excluded_untrained;
  report.gold_avg = p.gold_avg;
  return report;
}

double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

}  // namespace

EvalReport evaluate(std::span<const EvalDocument> docs, const Thesaurus* thesaurus,
                    const EvalConfig& config) {
  if (config.ranks.empty() || config.ranks.front() == 0 ||
      std::adjacent_find(config.ranks.begin(), config.ranks.end(),
                         std::greater_equal<>()) != config.ranks.end())
    throw Error(Errc::invalid_argument,
                "ranks must be strictly increasing positive integers");

  const auto p = prepare(docs, thesaurus, config);
  auto report = make_report(config, p, false);
  const std::size_t max_rank = config.ranks.back();
  const double n = static_cast<double>(p.docs.size());

  std::vector<double> hit_sum(config.ranks.size(), 0.0);
  std::vector<double> recall_sum(config.ranks.size(), 0.0);
  std::vector<double> precision_sum(config.ranks.size(), 0.0);
  double gold_sum = 0.0;
  for (const auto* doc : p.docs) {
    const auto hits = cumulative_hits(*doc, thesaurus, config.mode, max_rank);
    const double gold = static_cast<double>(doc->gold.size());
    gold_sum += gold;
    for (std::size_t i = 0; i < config.ranks.size(); ++i) {
      const double h = static_cast<double>(hits[config.ranks[i] - 1]);
      hit_sum[i] += h;
      recall_sum[i] += h / gold;
      precision_sum[i] += h / static_cast<double>(config.ranks[i]);
    }
  }

  for (std::size_t i = 0; i < config.ranks.size(); ++i) {
    const double k = static_cast<double>(config.ranks[i]);
    RankResult r{config.ranks[i], 0.0, 0.0};
    if (config.aggregation == Aggregation::micro) {
      r.recall = ratio(hit_sum[i], gold_sum);
      r.precision = ratio(hit_sum[i], k * n);
    } else {
      r.recall = ratio(recall_sum[i], n);
      r.precision = ratio(precision_sum[i], n);
    }
    report.results.push_back(r);
  }
  return report;
}

EvalReport evaluate_varying(std::span<const EvalDocument> docs,
                            const Thesaurus* thesaurus, const EvalConfig& config) {
  const auto p = prepare(docs, thesaurus, config);
  auto report = make_report(config, p, true);
  const double n = static_cast<double>(p.docs.size());

  double hit_sum = 0.0, gold_sum = 0.0, recall_sum = 0.0, precision_sum = 0.0;
  for (const auto* doc : p.docs) {
    const std::size_t k = doc->gold.size();
    const double h =
        static_cast<double>(cumulative_hits(*doc, thesaurus, config.mode, k).back());
    hit_sum += h;
    gold_sum += static_cast<double>(k);
    recall_sum += h / static_cast<double>(doc->gold.size());
    precision_sum += h / static_cast<double>(k);
  }

  RankResult r;
  if (config.aggregation == Aggregation::micro) {
    r.recall = ratio(hit_sum, gold_sum);
    r.precision = ratio(hit_sum, gold_sum);
  } else {
    r.recall = ratio(recall_sum, n);
    r.precision = ratio(precision_sum, n);
  }
  report.results.push_back(r);
  return report;
}

double random_baseline(std::size_t num_descriptors, std::size_t k) {
  if (num_descriptors == 0 || k == 0 || k > num_descriptors)
    throw Error(Errc::invalid_argument,
                "random baseline needs 1 <= k <= num_descriptors (got k=" +
                    std::to_string(k) + ", num_descriptors=" +
                    std::to_string(num_descriptors) + ")");
  // k uniform picks hit the single gold descriptor with probability
  // k / num_descriptors; precision divides the expected hit by k.
  const double expected_hits =
      static_cast<double>(k) / static_cast<double>(num_descriptors);
  return expected_hits / static_cast<double>(k);
}

std::string format_percent(double fraction, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f%%", decimals, fraction * 100.0);
  return buf;
}

namespace {

std::string whole_percent(double fraction) {
  return std::to_string(std::lround(fraction * 100.0)) + "%";
}

}  // namespace

std::string format_eval_table(const EvalReport& strict, const EvalReport* relaxed,
                              const EvalReport* strict_varying,
                              const EvalReport* relaxed_varying) {
  std::ostringstream os;
  auto cell = [&os](const std::string& s, int width) {
    os << std::left << std::setw(width) << s;
  };
  cell("Rank", 9);
  cell(std::string(to_string(strict.mode)), 22);
  if (relaxed) cell(std::string(to_string(relaxed->mode)) + " (+RT/BT/NT)", 22);
  os << '\n';
  cell("", 9);
  cell("Recall", 11);
  cell("Precision", 11);
  if (relaxed) {
    cell("Recall", 11);
    cell("Precision", 11);
  }
  os << '\n';

  auto row = [&](const std::string& label, const RankResult& s, const RankResult* r) {
    cell(label, 9);
    cell(whole_percent(s.recall), 11);
    cell(whole_percent(s.precision), 11);
    if (r) {
      cell(whole_percent(r->recall), 11);
      cell(whole_percent(r->precision), 11);
    }
    os << '\n';
  };
  for (std::size_t i = 0; i < strict.results.size(); ++i) {
    row(std::to_string(strict.results[i].rank), strict.results[i],
        relaxed ? &relaxed->results.at(i) : nullptr);
  }
  if (strict_varying) {
    row("Varying", strict_varying->results.at(0),
        relaxed_varying ? &relaxed_varying->results.at(0) : nullptr);
  }
  std::string out = os.str();
  // Drop padding at line ends.
  std::string trimmed;
  for (auto line : str::split(out, '\n')) {
    const auto end = line.find_last_not_of(' ');
    if (end != std::string_view::npos) trimmed.append(line.substr(0, end + 1));
    trimmed.push_back('\n');
  }
  trimmed.pop_back();
  return trimmed;
}

std::string format_eval_tsv(std::span<const EvalReport> reports) {
  std::ostringstream os;
  os << "mode\taggregation\trank\trecall\tprecision\n";
  for (const auto& rep : reports) {
    for (const auto& r : rep.results) {
      os << to_string(rep.mode) << '\t' << to_string(rep.aggregation) << '\t'
         << (rep.varying ? std::string("varying") : std::to_string(r.rank)) << '\t'
         << str::format_double(r.recall) << '\t' << str::format_double(r.precision)
         << '\n';
    }
  }
  return os.str();
}

}  // namespace kwassign
