#include "kwassign/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "kwassign/error.hpp"

namespace kwassign {

bool canonicalize(AssociateList& list) {
  auto by_rank = [](const Associate& x, const Associate& y) {
    if (x.weight != y.weight) return x.weight > y.weight;
    return x.lemma < y.lemma;
  };
  if (std::is_sorted(list.entries.begin(), list.entries.end(), by_rank)) return false;
  std::sort(list.entries.begin(), list.entries.end(), by_rank);
  return true;
}

void AssociateStore::add(AssociateList list) {
  auto& lists = by_language_[list.language];
  const auto id = list.descriptor;
  if (!lists.emplace(id, std::move(list)).second)
    throw Error(Errc::invalid_argument,
                "duplicate associate list for " + id.str());
}

bool AssociateStore::has_language(std::string_view lang) const {
  return by_language_.find(lang) != by_language_.end();
}

std::vector<std::string> AssociateStore::languages() const {
  std::vector<std::string> out;
  for (const auto& [lang, lists] : by_language_) out.push_back(lang);
  return out;
}

const AssociateStore::LanguageLists& AssociateStore::lists(
    std::string_view lang) const {
  auto it = by_language_.find(lang);
  if (it == by_language_.end())
    throw Error(Errc::unknown_language,
                "store has no associate lists for language '" +
                    std::string(lang) + "'");
  return it->second;
}

const AssociateList* AssociateStore::find(std::string_view lang,
                                          const DescriptorId& id) const {
  auto it = by_language_.find(lang);
  if (it == by_language_.end()) return nullptr;
  auto jt = it->second.find(id);
  return jt == it->second.end() ? nullptr : &jt->second;
}

std::size_t AssociateStore::list_count() const {
  std::size_t n = 0;
  for (const auto& [lang, lists] : by_language_) n += lists.size();
  return n;
}

std::string TrainingReport::summary() const {
  std::ostringstream os;
  for (const auto& r : languages) {
    std::size_t short_of_tokens = 0;
    for (const auto& s : r.skipped)
      if (s.reason == SkipReason::insufficient_tokens) ++short_of_tokens;
    os << r.language << ": " << r.trained << " of " << r.total
       << " descriptors trained (" << r.documents << " documents, "
       << short_of_tokens << " below min_tokens, "
       << r.skipped.size() - short_of_tokens << " without associates)\n";
  }
  return os.str();
}

namespace {

void require_single_language(std::span<const TrainingDocument> corpus) {
  for (const auto& doc : corpus) {
    if (doc.language != corpus.front().language)
      throw Error(Errc::invalid_argument,
                  "mixed languages in corpus: " + corpus.front().language +
                      " and " + doc.language);
  }
}

std::string_view reference_mode_name(ReferenceMode mode) {
  switch (mode) {
    case ReferenceMode::whole_collection: return "whole-collection";
    case ReferenceMode::external: return "external";
    case ReferenceMode::per_subcorpus: return "per-subcorpus";
  }
  return "whole-collection";
}

// Runs fn(i) for i in [0, n) on up to `threads` workers. The first exception
// is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

LanguageReport train_language(std::span<const TrainingDocument> docs,
                              const Thesaurus& thesaurus,
                              const TrainConfig& config, AssociateStore& store) {
  LanguageReport report;
  report.language = docs.front().language;
  report.documents = docs.size();
  report.total = thesaurus.size();

  std::map<DescriptorId, FrequencyTable> mega;
  std::map<DescriptorId, std::set<std::string>> subcorpora_of;
  std::map<std::string, FrequencyTable> subcorpus_tables;
  std::size_t gold_labels = 0;
  for (const auto& doc : docs) {
    gold_labels += doc.gold.size();
    for (const auto& d : doc.gold) {
      mega[d] += doc.table;
      subcorpora_of[d].insert(doc.subcorpus);
    }
    if (config.reference_mode == ReferenceMode::per_subcorpus)
      subcorpus_tables[doc.subcorpus] += doc.table;
  }
  report.gold_avg = static_cast<double>(gold_labels) / static_cast<double>(docs.size());

  FrequencyTable shared_reference;
  if (config.reference_mode == ReferenceMode::external) {
    if (!config.external_reference)
      throw Error(Errc::invalid_argument,
                  "external reference mode needs a reference table");
    shared_reference = *config.external_reference;
  } else if (config.reference_mode == ReferenceMode::whole_collection) {
    shared_reference = build_reference(docs);
  }

  std::vector<DescriptorId> candidates;
  for (const auto& [id, d] : thesaurus.descriptors()) {
    auto it = mega.find(id);
    const std::uint64_t tokens = it == mega.end() ? 0 : it->second.total();
    if (tokens >= config.min_tokens && tokens > 0) {
      candidates.push_back(id);
    } else {
      report.skipped.push_back({id, tokens, SkipReason::insufficient_tokens});
    }
  }

  const KeywordOptions options{config.method, config.max_list_len, 1};
  std::vector<AssociateList> lists(candidates.size());
  parallel_for(candidates.size(), config.threads, [&](std::size_t i) {
    const auto& id = candidates[i];
    const auto& doc_table = mega.at(id);
    FrequencyTable per_descriptor_ref;
    const FrequencyTable* ref = &shared_reference;
    if (config.reference_mode == ReferenceMode::per_subcorpus) {
      for (const auto& tag : subcorpora_of.at(id))
        per_descriptor_ref += subcorpus_tables.at(tag);
      ref = &per_descriptor_ref;
    }
    AssociateList list{id, report.language, {}, doc_table.total()};
    for (auto& kw : extract_keywords(doc_table, *ref, options))
      list.entries.push_back({std::move(kw.lemma), kw.keyness});
    lists[i] = std::move(list);
  });

  for (auto& list : lists) {
    if (list.entries.empty()) {
      report.skipped.push_back(
          {list.descriptor, list.training_tokens, SkipReason::no_associates});
      continue;
    }
    ++report.trained;
    store.add(std::move(list));
  }
  std::sort(report.skipped.begin(), report.skipped.end(),
            [](const auto& x, const auto& y) { return x.descriptor < y.descriptor; });
  return report;
}

}  // namespace

FrequencyTable build_mega_document(std::span<const TrainingDocument> corpus,
                                   const DescriptorId& descriptor) {
  require_single_language(corpus);
  FrequencyTable mega;
  for (const auto& doc : corpus) {
    if (doc.gold.contains(descriptor)) mega += doc.table;
  }
  return mega;
}

FrequencyTable build_reference(std::span<const TrainingDocument> corpus,
                               const std::optional<FrequencyTable>& external) {
  if (external) return *external;
  if (corpus.empty())
    throw Error(Errc::empty_corpus, "cannot build a reference from an empty corpus");
  FrequencyTable ref;
  for (const auto& doc : corpus) ref += doc.table;
  return ref;
}

TrainResult train(std::span<const TrainingDocument> corpus,
                  const Thesaurus& thesaurus, const TrainConfig& config) {
  if (corpus.empty()) throw Error(Errc::empty_corpus, "training corpus is empty");

  std::set<std::string> unknown;
  for (const auto& doc : corpus) {
    for (const auto& d : doc.gold) {
      if (!thesaurus.contains(d)) unknown.insert(doc.doc_id + " -> " + d.str());
    }
  }
  if (!unknown.empty()) {
    std::string msg = "training documents reference unknown descriptors:";
    for (const auto& u : unknown) msg += " " + u + ";";
    msg.pop_back();
    throw Error(Errc::unknown_id, msg);
  }

  StoreHeader header;
  header.method = std::string(to_string(config.method));
  header.created_from = config.reference_description.empty()
                            ? std::string(reference_mode_name(config.reference_mode))
                            : config.reference_description;
  header.parameters["min_tokens"] = std::to_string(config.min_tokens);
  header.parameters["max_list_len"] = config.max_list_len == kUnlimited
                                          ? "unlimited"
                                          : std::to_string(config.max_list_len);
  header.parameters["reference_mode"] = std::string(reference_mode_name(config.reference_mode));

  TrainResult result{AssociateStore(std::move(header)), {}};

  std::map<std::string, std::vector<TrainingDocument>> by_language;
  for (const auto& doc : corpus) by_language[doc.language].push_back(doc);
  for (const auto& [lang, docs] : by_language) {
    result.report.languages.push_back(
        train_language(docs, thesaurus, config, result.store));
  }
  return result;
}

}  // namespace kwassign
