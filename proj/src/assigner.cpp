#include "kwassign/assigner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "kwassign/error.hpp"

namespace kwassign {

std::vector<DescriptorId> Assignment::descriptor_ids() const {
  std::vector<DescriptorId> ids;
  ids.reserve(ranked.size());
  for (const auto& r : ranked) ids.push_back(r.descriptor);
  return ids;
}

Assigner::Assigner(const AssociateStore& store, std::string language)
    : language_(std::move(language)) {
  const auto& lists = store.lists(language_);
  descriptors_.reserve(lists.size());
  for (const auto& [id, list] : lists) {
    const std::size_t index = descriptors_.size();
    descriptors_.push_back(id);
    for (const auto& entry : list.entries)
      postings_[entry.lemma].push_back({index, entry.weight});
  }
}

Assignment Assigner::assign(const std::string& doc_id, const FrequencyTable& doc,
                            const AssignOptions& options) const {
  if (doc.total() == 0)
    throw Error(Errc::empty_document, "document '" + doc_id + "' has no lemmas");

  std::vector<double> scores(descriptors_.size(), 0.0);
  std::vector<bool> touched(descriptors_.size(), false);
  for (const auto& [lemma, count] : doc) {
    auto it = postings_.find(lemma);
    if (it == postings_.end()) continue;
    for (const auto& p : it->second) {
      scores[p.descriptor] += static_cast<double>(count) * p.weight;
      touched[p.descriptor] = true;
    }
  }

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (touched[i] && scores[i] > 0.0) order.push_back(i);
  }
  // Descriptor indices follow id order, so index order breaks score ties.
  auto by_rank = [&](std::size_t x, std::size_t y) {
    if (scores[x] != scores[y]) return scores[x] > scores[y];
    return x < y;
  };
  const std::size_t keep = std::min(options.top_n, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep),
                    order.end(), by_rank);
  order.resize(keep);

  const double scale =
      options.per_thousand_tokens ? 1000.0 / static_cast<double>(doc.total()) : 1.0;
  Assignment out{doc_id, language_, {}};
  out.ranked.reserve(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    out.ranked.push_back({descriptors_[order[r]], scores[order[r]] * scale, r + 1});
  }
  return out;
}

Assignment assign(const std::string& doc_id, const FrequencyTable& doc,
                  const AssociateStore& store, const std::string& language,
                  const AssignOptions& options) {
  return Assigner(store, language).assign(doc_id, doc, options);
}

std::vector<DisplayRow> display(const Assignment& assignment,
                                const Thesaurus& thesaurus,
                                std::string_view target_language) {
  if (!thesaurus.supports_language(target_language))
    throw Error(Errc::unknown_language,
                "thesaurus has no labels for language '" +
                    std::string(target_language) + "'");
  std::vector<DisplayRow> rows;
  rows.reserve(assignment.ranked.size());
  for (const auto& r : assignment.ranked) {
    rows.push_back({r.rank, r.score, r.descriptor,
                    thesaurus.label(r.descriptor, target_language)});
  }
  return rows;
}

std::string_view to_string(SimilarityMetric metric) {
  return metric == SimilarityMetric::cosine ? "cosine" : "jaccard";
}

SimilarityMetric parse_similarity_metric(std::string_view name) {
  if (name == "jaccard") return SimilarityMetric::jaccard;
  if (name == "cosine") return SimilarityMetric::cosine;
  throw Error(Errc::invalid_argument, "unknown similarity metric '" +
                                          std::string(name) +
                                          "' (expected jaccard or cosine)");
}

SimilarityScore similarity(const Assignment& a, const Assignment& b,
                           std::size_t k, SimilarityMetric metric) {
  if (k == 0) throw Error(Errc::invalid_argument, "similarity depth k must be >= 1");

  auto top = [k](const Assignment& x) {
    DescriptorSet ids;
    for (std::size_t i = 0; i < std::min(k, x.ranked.size()); ++i)
      ids.insert(x.ranked[i].descriptor);
    return ids;
  };
  const auto top_a = top(a);
  const auto top_b = top(b);
  if (top_a.empty() && top_b.empty())
    throw Error(Errc::invalid_argument,
                "cannot compare two assignments with no descriptors");

  DescriptorSet united = top_a;
  united.insert(top_b.begin(), top_b.end());

  if (metric == SimilarityMetric::jaccard) {
    std::size_t shared = 0;
    for (const auto& id : top_a) shared += top_b.contains(id);
    return {static_cast<double>(shared) / static_cast<double>(united.size()), k};
  }

  auto scores_of = [](const Assignment& x) {
    std::map<DescriptorId, double> s;
    for (const auto& r : x.ranked) s.emplace(r.descriptor, r.score);
    return s;
  };
  const auto sa = scores_of(a), sb = scores_of(b);
  long double dot = 0, na = 0, nb = 0;
  for (const auto& id : united) {
    const auto ia = sa.find(id);
    const auto ib = sb.find(id);
    const long double va = ia == sa.end() ? 0.0 : ia->second;
    const long double vb = ib == sb.end() ? 0.0 : ib->second;
    dot += va * vb;
    na += va * va;
    nb += vb * vb;
  }
  if (na == 0 || nb == 0) return {0.0, k};
  const double value = static_cast<double>(dot / (std::sqrt(na) * std::sqrt(nb)));
  return {std::clamp(value, 0.0, 1.0), k};
}

}  // namespace kwassign
