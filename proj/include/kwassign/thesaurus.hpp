#pragma once

// Multilingual controlled-vocabulary thesaurus: descriptors with one label per
// language, broader/narrower/related relations and use-for synonyms.

#include <compare>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kwassign/error.hpp"

namespace kwassign {

// Opaque, language-neutral descriptor identity.
class DescriptorId {
 public:
  DescriptorId() = default;
  explicit DescriptorId(std::string value) : value_(std::move(value)) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const DescriptorId&, const DescriptorId&) = default;

 private:
  std::string value_;
};

using DescriptorSet = std::set<DescriptorId>;

struct Descriptor {
  DescriptorId id;
  std::string field;
  std::string microthesaurus;
  DescriptorSet broader;
  DescriptorSet narrower;
  DescriptorSet related;
  std::map<std::string, std::string> labels;  // language -> label
  std::map<std::string, std::vector<std::string>> use_for;
};

struct ThesaurusOptions {
  // Longest allowed broader-term chain, counted in descriptors.
  std::size_t max_depth = 8;
};

// Immutable after construction. The constructor validates every structural
// invariant and throws ValidationError listing all violations:
//   - unique ids, no self-relations, no dangling references
//   - BT/NT reciprocity and RT symmetry
//   - acyclic BT graph no deeper than max_depth
//   - exactly one label for each language used anywhere in the thesaurus
// Duplicate labels within a language are reported as warnings only.
class Thesaurus {
 public:
  Thesaurus() = default;
  explicit Thesaurus(std::vector<Descriptor> descriptors,
                     const ThesaurusOptions& options = {});

  std::size_t size() const noexcept { return descriptors_.size(); }
  bool contains(const DescriptorId& id) const { return descriptors_.contains(id); }
  bool supports_language(std::string_view lang) const;

  // Throws Errc::unknown_id.
  const Descriptor& at(const DescriptorId& id) const;
  // Throws Errc::unknown_id or Errc::unknown_language.
  const std::string& label(const DescriptorId& id, std::string_view lang) const;
  // Related terms plus the broader and narrower terms one level away.
  DescriptorSet neighbors(const DescriptorId& id) const;

  const std::map<DescriptorId, Descriptor>& descriptors() const noexcept {
    return descriptors_;
  }
  // Languages in order of first appearance.
  const std::vector<std::string>& languages() const noexcept { return languages_; }
  std::set<std::string> fields() const;
  std::set<std::string> microthesauri() const;
  std::size_t broader_relation_count() const;  // BT/NT pairs
  std::size_t related_relation_count() const;  // unordered RT pairs
  std::size_t max_depth() const noexcept { return depth_; }
  const Warnings& warnings() const noexcept { return warnings_; }

 private:
  std::map<DescriptorId, Descriptor> descriptors_;
  std::vector<std::string> languages_;
  std::size_t depth_ = 0;
  Warnings warnings_;
};

// Line-based record format, one descriptor per line:
// ID TAB FIELD TAB MICRO TAB BT:id,id TAB NT:id,id TAB RT:id,id
//    TAB LABEL:lang=text;lang=text TAB UF:lang=syn|syn;lang=syn
// Blank lines and lines starting with '#' are skipped.
Thesaurus parse_thesaurus(std::istream& in, const std::string& source_name,
                          const ThesaurusOptions& options = {});
Thesaurus load_thesaurus(const std::filesystem::path& path,
                         const ThesaurusOptions& options = {});

void write_thesaurus(std::ostream& out, const std::vector<Descriptor>& descriptors,
                     const std::vector<std::string>& languages);
void write_thesaurus(std::ostream& out, const Thesaurus& thesaurus);

}  // namespace kwassign

template <>
struct std::hash<kwassign::DescriptorId> {
  std::size_t operator()(const kwassign::DescriptorId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
