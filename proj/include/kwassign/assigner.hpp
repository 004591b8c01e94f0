#pragma once

// Descriptor assignment: every lemma of a document that is an associate of a
// descriptor adds frequency * associate weight to that descriptor's score.

#include <string>
#include <unordered_map>
#include <vector>

#include "kwassign/textpipe.hpp"
#include "kwassign/thesaurus.hpp"
#include "kwassign/trainer.hpp"

namespace kwassign {

struct RankedDescriptor {
  DescriptorId descriptor;
  double score = 0.0;
  std::size_t rank = 0;  // 1-based

  friend bool operator==(const RankedDescriptor&, const RankedDescriptor&) = default;
};

struct Assignment {
  std::string doc_id;
  std::string language;
  std::vector<RankedDescriptor> ranked;  // score descending, id ascending

  std::vector<DescriptorId> descriptor_ids() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct AssignOptions {
  std::size_t top_n = 25;  // kUnlimited keeps every scored descriptor
  // Divide scores by document length in thousands of tokens.
  bool per_thousand_tokens = false;
};

// Inverted view of one language of an AssociateStore. Holds a reference to
// the store, which must outlive it.
class Assigner {
 public:
  // Throws Errc::unknown_language.
  Assigner(const AssociateStore& store, std::string language);

  const std::string& language() const noexcept { return language_; }

  // Throws Errc::empty_document.
  Assignment assign(const std::string& doc_id, const FrequencyTable& doc,
                    const AssignOptions& options = {}) const;

 private:
  struct Posting {
    std::size_t descriptor;  // index into descriptors_
    double weight;
  };

  std::string language_;
  std::vector<DescriptorId> descriptors_;
  std::unordered_map<Lemma, std::vector<Posting>> postings_;
};

Assignment assign(const std::string& doc_id, const FrequencyTable& doc,
                  const AssociateStore& store, const std::string& language,
                  const AssignOptions& options = {});

struct DisplayRow {
  std::size_t rank = 0;
  double score = 0.0;
  DescriptorId descriptor;
  std::string label;
};

// Renders each ranked descriptor with its label in `target_language`.
// Throws Errc::unknown_language and Errc::unknown_id.
std::vector<DisplayRow> display(const Assignment& assignment,
                                const Thesaurus& thesaurus,
                                std::string_view target_language);

enum class SimilarityMetric { jaccard, cosine };

std::string_view to_string(SimilarityMetric metric);
SimilarityMetric parse_similarity_metric(std::string_view name);

struct SimilarityScore {
  double value = 0.0;  // in [0, 1]
  std::size_t k = 0;
};

// Compares the top-k descriptors of two assignments, which may come from
// different source languages. Jaccard works on the id sets; cosine on the
// score vectors restricted to the union of both top-k sets. Throws
// Errc::invalid_argument when k is 0 or both top-k sets are empty.
SimilarityScore similarity(const Assignment& a, const Assignment& b,
                           std::size_t k,
                           SimilarityMetric metric = SimilarityMetric::jaccard);

}  // namespace kwassign
