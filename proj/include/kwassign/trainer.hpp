#pragma once

// Training: per descriptor and language, merge the manually indexed documents
// into one mega-document and keep its keyness-ranked lemmas as the
// descriptor's associates.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kwassign/keyness.hpp"
#include "kwassign/textpipe.hpp"
#include "kwassign/thesaurus.hpp"

namespace kwassign {

struct TrainingDocument {
  std::string doc_id;
  std::string language;
  std::string subcorpus;  // empty when untagged
  FrequencyTable table;
  DescriptorSet gold;
};

struct Associate {
  Lemma lemma;
  double weight = 0.0;

  friend bool operator==(const Associate&, const Associate&) = default;
};

struct AssociateList {
  DescriptorId descriptor;
  std::string language;
  std::vector<Associate> entries;  // weight descending, lemma ascending
  std::uint64_t training_tokens = 0;

  friend bool operator==(const AssociateList&, const AssociateList&) = default;
};

// Sorts entries into canonical order. Returns true when the order changed.
bool canonicalize(AssociateList& list);

struct StoreHeader {
  static constexpr int kFormatVersion = 1;

  int format_version = kFormatVersion;
  std::string method = "loglik";
  std::string created_from;
  // min_tokens, max_list_len and any unrecognised keys, kept verbatim.
  std::map<std::string, std::string> parameters;

  friend bool operator==(const StoreHeader&, const StoreHeader&) = default;
};

// The trained model: at most one associate list per (language, descriptor).
class AssociateStore {
 public:
  using LanguageLists = std::map<DescriptorId, AssociateList>;

  AssociateStore() = default;
  explicit AssociateStore(StoreHeader header) : header_(std::move(header)) {}

  // Throws Errc::invalid_argument on a duplicate (language, descriptor).
  void add(AssociateList list);

  const StoreHeader& header() const noexcept { return header_; }
  StoreHeader& header() noexcept { return header_; }

  bool has_language(std::string_view lang) const;
  std::vector<std::string> languages() const;
  // Throws Errc::unknown_language.
  const LanguageLists& lists(std::string_view lang) const;
  const AssociateList* find(std::string_view lang, const DescriptorId& id) const;
  std::size_t list_count() const;

  friend bool operator==(const AssociateStore&, const AssociateStore&) = default;

 private:
  StoreHeader header_;
  std::map<std::string, LanguageLists, std::less<>> by_language_;
};

enum class ReferenceMode {
  whole_collection,  // merge of every training document of the language
  external,          // a supplied table, used verbatim
  per_subcorpus,     // merge of the subcorpora the descriptor's documents use
};

struct TrainConfig {
  KeynessMethod method = KeynessMethod::log_likelihood;
  std::uint64_t min_tokens = 1000;
  std::size_t max_list_len = 500;  // kUnlimited for no cap
  ReferenceMode reference_mode = ReferenceMode::whole_collection;
  std::optional<FrequencyTable> external_reference;
  std::string reference_description;  // recorded in the store header
  unsigned threads = 0;               // 0: hardware concurrency
};

enum class SkipReason { insufficient_tokens, no_associates };

struct SkippedDescriptor {
  DescriptorId descriptor;
  std::uint64_t training_tokens = 0;
  SkipReason reason = SkipReason::insufficient_tokens;
};

struct LanguageReport {
  std::string language;
  std::size_t documents = 0;
  std::size_t trained = 0;
  std::size_t total = 0;  // descriptors in the thesaurus
  double gold_avg = 0.0;  // mean gold descriptors per document
  std::vector<SkippedDescriptor> skipped;
};

struct TrainingReport {
  std::vector<LanguageReport> languages;

  // "es: 2870 of 5933 descriptors trained ..." one line per language.
  std::string summary() const;
};

struct TrainResult {
  AssociateStore store;
  TrainingReport report;
};

// Merge of the tables of every document whose gold set contains `descriptor`.
// Throws Errc::invalid_argument when documents of several languages are mixed.
FrequencyTable build_mega_document(std::span<const TrainingDocument> corpus,
                                   const DescriptorId& descriptor);

// Merge of every document table, or `external` verbatim when given.
// Throws Errc::empty_corpus for an empty corpus without an external table.
FrequencyTable build_reference(std::span<const TrainingDocument> corpus,
                               const std::optional<FrequencyTable>& external = {});

// Trains each language of the corpus independently. Throws Errc::empty_corpus
// and Errc::unknown_id for gold descriptors missing from the thesaurus.
TrainResult train(std::span<const TrainingDocument> corpus,
                  const Thesaurus& thesaurus, const TrainConfig& config = {});

}  // namespace kwassign
