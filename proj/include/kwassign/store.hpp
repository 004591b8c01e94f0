#pragma once

// File formats: associate stores, corpus manifests, pipeline resources,
// frequency tables and assignment listings. All files are UTF-8 with LF line
// endings and no BOM.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "kwassign/assigner.hpp"
#include "kwassign/error.hpp"
#include "kwassign/textpipe.hpp"
#include "kwassign/thesaurus.hpp"
#include "kwassign/trainer.hpp"

namespace kwassign {

namespace fs = std::filesystem;

// Store directory layout:
//   store.meta            key=value lines (format_version, method, ...)
//   associates.<lang>.tsv descriptor_id TAB lemma TAB weight, grouped by
//                         descriptor, weight descending, preceded by
//                         #method=, #min_tokens=, #max_list_len=,
//                         #reference= and #training_tokens.<id>= lines.
inline constexpr const char* kStoreMetaFile = "store.meta";
fs::path associates_file(const fs::path& dir, std::string_view language);

// Writes the store into `dir`, creating it if needed and removing stale
// associates.*.tsv files. Output is byte-for-byte deterministic.
void save_store(const AssociateStore& store, const fs::path& dir);

// Throws Errc::version_mismatch, ParseError (file:line) for malformed lines,
// non-positive or non-finite weights and duplicate entries. Lists out of
// canonical order are re-sorted and reported in `warnings`.
AssociateStore load_store(const fs::path& dir, Warnings* warnings = nullptr);

// Resource files. '#' comment lines and blank lines are skipped.
LemmaMap load_lemma_map(const fs::path& path);           // surface TAB lemma
StopList load_stop_list(const fs::path& path);           // one lemma per line
MultiwordList load_multiword_list(const fs::path& path); // one expression per line

// lemma TAB count, sorted by lemma.
void write_frequency_table(std::ostream& out, const FrequencyTable& table);
void save_frequency_table(const FrequencyTable& table, const fs::path& path);
FrequencyTable load_frequency_table(const fs::path& path);

struct ManifestEntry {
  std::string doc_id;
  std::string language;
  std::string subcorpus;  // "" for '-'
  fs::path path;          // resolved against the manifest's directory
  DescriptorSet descriptors;
};

// doc_id TAB language TAB subcorpus_or_- TAB relative_path TAB ids,comma,sep
std::vector<ManifestEntry> load_manifest(const fs::path& path);

// Per-language pipelines with a fallback used for unlisted languages.
struct PipelineSet {
  Pipeline fallback;
  std::map<std::string, Pipeline, std::less<>> by_language;

  const Pipeline& for_language(std::string_view lang) const;
};

std::string read_text_file(const fs::path& path);

// Reads and preprocesses every manifest document.
std::vector<TrainingDocument> load_corpus(const std::vector<ManifestEntry>& manifest,
                                          const PipelineSet& pipelines);

// Assignment listing. Each document starts with a header line
//   #doc_id=<id> TAB language=<lang>
// followed by rows rank TAB score TAB descriptor_id TAB label.
void write_assignment(std::ostream& out, const Assignment& assignment,
                      const Thesaurus* thesaurus, std::string_view target_language);
std::vector<Assignment> read_assignments(std::istream& in, const std::string& source_name);
std::vector<Assignment> load_assignments(const fs::path& path);

}  // namespace kwassign
