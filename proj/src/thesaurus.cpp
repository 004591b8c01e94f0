#include "kwassign/thesaurus.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "strings.hpp"

namespace kwassign {

namespace {

constexpr std::size_t kColumns = 8;

std::string describe_cycle(const std::vector<DescriptorId>& path) {
  std::string out;
  for (const auto& id : path) {
    if (!out.empty()) out += " -> ";
    out += id.str();
  }
  return out;
}

}  // namespace

Thesaurus::Thesaurus(std::vector<Descriptor> descriptors,
                     const ThesaurusOptions& options) {
  std::vector<std::string> issues;

  for (auto& d : descriptors) {
    if (d.id.empty()) {
      issues.push_back("descriptor with empty id");
      continue;
    }
    for (const auto& [lang, text] : d.labels) {
      if (std::find(languages_.begin(), languages_.end(), lang) == languages_.end())
        languages_.push_back(lang);
    }
    const auto id = d.id;
    if (!descriptors_.emplace(id, std::move(d)).second)
      issues.push_back("duplicate descriptor id " + id.str());
  }

  auto check_refs = [&](const Descriptor& d, const DescriptorSet& set,
                        std::string_view rel) {
    for (const auto& other : set) {
      if (other == d.id) {
        issues.push_back(d.id.str() + " lists itself as " + std::string(rel));
      } else if (!descriptors_.contains(other)) {
        issues.push_back(d.id.str() + " has unknown " + std::string(rel) + " " +
                         other.str());
      }
    }
  };

  for (const auto& [id, d] : descriptors_) {
    check_refs(d, d.broader, "BT");
    check_refs(d, d.narrower, "NT");
    check_refs(d, d.related, "RT");
    for (const auto& lang : languages_) {
      if (!d.labels.contains(lang))
        issues.push_back(id.str() + " has no label for language " + lang);
    }
  }

  // Reciprocity, checked from both sides so every broken pair is named once.
  for (const auto& [id, d] : descriptors_) {
    for (const auto& bt : d.broader) {
      auto it = descriptors_.find(bt);
      if (it != descriptors_.end() && !it->second.narrower.contains(id))
        issues.push_back("BT/NT reciprocity: " + bt.str() + " is BT of " +
                         id.str() + " but " + id.str() + " is not NT of " +
                         bt.str());
    }
    for (const auto& nt : d.narrower) {
      auto it = descriptors_.find(nt);
      if (it != descriptors_.end() && !it->second.broader.contains(id))
        issues.push_back("BT/NT reciprocity: " + nt.str() + " is NT of " +
                         id.str() + " but " + id.str() + " is not BT of " +
                         nt.str());
    }
    for (const auto& rt : d.related) {
      auto it = descriptors_.find(rt);
      if (it != descriptors_.end() && !it->second.related.contains(id))
        issues.push_back("RT asymmetry: " + id.str() + " lists RT " + rt.str() +
                         " but " + rt.str() + " does not list RT " + id.str());
    }
  }

  // BT cycles and depth. depth(x) = 1 + max depth over broader terms.
  enum class Mark { unvisited, active, done };
  std::unordered_map<DescriptorId, Mark> marks;
  std::unordered_map<DescriptorId, std::size_t> depth;
  std::vector<DescriptorId> stack;
  bool cyclic = false;

  std::function<std::size_t(const DescriptorId&)> visit =
      [&](const DescriptorId& id) -> std::size_t {
    auto& mark = marks[id];
    if (mark == Mark::done) return depth[id];
    if (mark == Mark::active) {
      auto start = std::find(stack.begin(), stack.end(), id);
      std::vector<DescriptorId> cycle(start, stack.end());
      cycle.push_back(id);
      issues.push_back("BT cycle: " + describe_cycle(cycle));
      cyclic = true;
      return 0;
    }
    mark = Mark::active;
    stack.push_back(id);
    std::size_t best = 0;
    for (const auto& bt : descriptors_.at(id).broader) {
      if (descriptors_.contains(bt)) best = std::max(best, visit(bt));
    }
    stack.pop_back();
    marks[id] = Mark::done;
    depth[id] = best + 1;
    return best + 1;
  };
  for (const auto& [id, d] : descriptors_) depth_ = std::max(depth_, visit(id));
  if (!cyclic && depth_ > options.max_depth) {
    for (const auto& [id, dep] : depth) {
      if (dep > options.max_depth)
        issues.push_back(id.str() + " sits at depth " + std::to_string(dep) +
                         ", beyond the maximum of " +
                         std::to_string(options.max_depth));
    }
  }

  if (!issues.empty()) throw ValidationError(std::move(issues));

  for (const auto& lang : languages_) {
    std::map<std::string, DescriptorId> seen;
    for (const auto& [id, d] : descriptors_) {
      const auto& text = d.labels.at(lang);
      auto [it, inserted] = seen.emplace(text, id);
      if (!inserted)
        warnings_.push_back("label '" + text + "' (" + lang + ") shared by " +
                            it->second.str() + " and " + id.str());
    }
  }
}

bool Thesaurus::supports_language(std::string_view lang) const {
  return std::find(languages_.begin(), languages_.end(), lang) != languages_.end();
}

const Descriptor& Thesaurus::at(const DescriptorId& id) const {
  auto it = descriptors_.find(id);
  if (it == descriptors_.end())
    throw Error(Errc::unknown_id, "unknown descriptor " + id.str());
  return it->second;
}

const std::string& Thesaurus::label(const DescriptorId& id,
                                    std::string_view lang) const {
  const auto& d = at(id);
  auto it = d.labels.find(std::string(lang));
  if (it == d.labels.end())
    throw Error(Errc::unknown_language,
                "unknown language '" + std::string(lang) + "'");
  return it->second;
}

DescriptorSet Thesaurus::neighbors(const DescriptorId& id) const {
  const auto& d = at(id);
  DescriptorSet out = d.related;
  out.insert(d.broader.begin(), d.broader.end());
  out.insert(d.narrower.begin(), d.narrower.end());
  out.erase(id);
  return out;
}

std::set<std::string> Thesaurus::fields() const {
  std::set<std::string> out;
  for (const auto& [id, d] : descriptors_) out.insert(d.field);
  return out;
}

std::set<std::string> Thesaurus::microthesauri() const {
  std::set<std::string> out;
  for (const auto& [id, d] : descriptors_) out.insert(d.microthesaurus);
  return out;
}

std::size_t Thesaurus::broader_relation_count() const {
  std::size_t n = 0;
  for (const auto& [id, d] : descriptors_) n += d.broader.size();
  return n;
}

std::size_t Thesaurus::related_relation_count() const {
  std::size_t n = 0;
  for (const auto& [id, d] : descriptors_) n += d.related.size();
  return n / 2;
}

namespace {

std::string_view section(std::string_view column, std::string_view tag,
                         const std::string& source, std::size_t line) {
  if (!column.starts_with(tag) || column.size() < tag.size() + 1 ||
      column[tag.size()] != ':') {
    throw ParseError(source, line,
                     "expected section '" + std::string(tag) + ":', got '" +
                         std::string(column) + "'");
  }
  return column.substr(tag.size() + 1);
}

DescriptorSet parse_ids(std::string_view list, const std::string& source,
                        std::size_t line) {
  DescriptorSet ids;
  if (list.empty()) return ids;
  for (auto part : str::split(list, ',')) {
    part = str::trim(part);
    if (part.empty()) throw ParseError(source, line, "empty id in relation list");
    ids.emplace(std::string(part));
  }
  return ids;
}

// lang=value;lang=value, rejecting repeated languages.
std::vector<std::pair<std::string, std::string_view>> parse_lang_values(
    std::string_view list, const std::string& source, std::size_t line) {
  std::vector<std::pair<std::string, std::string_view>> out;
  if (list.empty()) return out;
  for (auto part : str::split(list, ';')) {
    const auto eq = part.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw ParseError(source, line,
                       "expected lang=text, got '" + std::string(part) + "'");
    std::string lang(str::trim(part.substr(0, eq)));
    for (const auto& [seen, v] : out) {
      if (seen == lang)
        throw ParseError(source, line, "language '" + lang + "' given twice");
    }
    out.emplace_back(std::move(lang), part.substr(eq + 1));
  }
  return out;
}

std::string join_ids(const DescriptorSet& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ',';
    out += id.str();
  }
  return out;
}

}  // namespace

Thesaurus parse_thesaurus(std::istream& in, const std::string& source_name,
                          const ThesaurusOptions& options) {
  std::vector<Descriptor> descriptors;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = str::strip_cr(raw);
    if (str::skippable(line)) continue;
    const auto cols = str::split(line, '\t');
    if (cols.size() != kColumns)
      throw ParseError(source_name, line_no,
                       "expected " + std::to_string(kColumns) + " tab-separated columns, got " +
                           std::to_string(cols.size()));
    Descriptor d;
    d.id = DescriptorId(std::string(str::trim(cols[0])));
    if (d.id.empty()) throw ParseError(source_name, line_no, "empty descriptor id");
    d.field = std::string(str::trim(cols[1]));
    d.microthesaurus = std::string(str::trim(cols[2]));
    d.broader = parse_ids(section(cols[3], "BT", source_name, line_no), source_name, line_no);
    d.narrower = parse_ids(section(cols[4], "NT", source_name, line_no), source_name, line_no);
    d.related = parse_ids(section(cols[5], "RT", source_name, line_no), source_name, line_no);
    for (auto& [lang, text] :
         parse_lang_values(section(cols[6], "LABEL", source_name, line_no),
                           source_name, line_no)) {
      if (text.empty())
        throw ParseError(source_name, line_no, "empty label for language " + lang);
      d.labels.emplace(lang, std::string(text));
    }
    for (auto& [lang, syns] :
         parse_lang_values(section(cols[7], "UF", source_name, line_no),
                           source_name, line_no)) {
      auto& list = d.use_for[lang];
      for (auto s : str::split(syns, '|')) {
        if (!s.empty()) list.emplace_back(s);
      }
    }
    descriptors.push_back(std::move(d));
  }
  if (in.bad()) throw Error(Errc::io, "failed reading " + source_name);
  return Thesaurus(std::move(descriptors), options);
}

Thesaurus load_thesaurus(const std::filesystem::path& path,
                         const ThesaurusOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open thesaurus " + path.string());
  return parse_thesaurus(in, path.string(), options);
}

void write_thesaurus(std::ostream& out, const std::vector<Descriptor>& descriptors,
                     const std::vector<std::string>& languages) {
  for (const auto& d : descriptors) {
    out << d.id.str() << '\t' << d.field << '\t' << d.microthesaurus << "\tBT:"
        << join_ids(d.broader) << "\tNT:" << join_ids(d.narrower)
        << "\tRT:" << join_ids(d.related) << "\tLABEL:";
    bool first = true;
    for (const auto& lang : languages) {
      auto it = d.labels.find(lang);
      if (it == d.labels.end()) continue;
      out << (first ? "" : ";") << lang << '=' << it->second;
      first = false;
    }
    out << "\tUF:";
    first = true;
    for (const auto& [lang, syns] : d.use_for) {
      if (syns.empty()) continue;
      out << (first ? "" : ";") << lang << '=';
      for (std::size_t i = 0; i < syns.size(); ++i) out << (i ? "|" : "") << syns[i];
      first = false;
    }
    out << '\n';
  }
}

void write_thesaurus(std::ostream& out, const Thesaurus& thesaurus) {
  std::vector<Descriptor> ordered;
  ordered.reserve(thesaurus.size());
  for (const auto& [id, d] : thesaurus.descriptors()) ordered.push_back(d);
  write_thesaurus(out, ordered, thesaurus.languages());
}

}  // namespace kwassign
