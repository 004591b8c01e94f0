#include "kwassign/store.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "strings.hpp"

namespace kwassign {

namespace {

constexpr std::string_view kTokensPrefix = "training_tokens.";

std::ifstream open_input(const fs::path& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + std::string(what) + " " + path.string());
  return in;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw Error(Errc::io, "failed writing " + path.string());
}

// Calls fn(line_no, line) for every non-comment, non-blank line.
template <typename Fn>
void for_each_data_line(const fs::path& path, std::string_view what, Fn&& fn) {
  auto in = open_input(path, what);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = str::strip_cr(raw);
    if (str::skippable(line)) continue;
    fn(line_no, line);
  }
  if (in.bad()) throw Error(Errc::io, "failed reading " + path.string());
}

std::pair<std::string, std::string> split_key_value(std::string_view line,
                                                    const std::string& source,
                                                    std::size_t line_no) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw ParseError(source, line_no, "expected key=value, got '" + std::string(line) + "'");
  return {std::string(line.substr(0, eq)), std::string(line.substr(eq + 1))};
}

}  // namespace

fs::path associates_file(const fs::path& dir, std::string_view language) {
  return dir / ("associates." + std::string(language) + ".tsv");
}

void save_store(const AssociateStore& store, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::io, "cannot create store directory " + dir.string());

  const auto languages = store.languages();
  const auto& header = store.header();

  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name.starts_with("associates.") && name.ends_with(".tsv")) {
      const auto lang = name.substr(11, name.size() - 15);
      if (!store.has_language(lang)) fs::remove(entry.path());
    }
  }

  {
    const auto path = dir / kStoreMetaFile;
    auto out = open_output(path);
    out << "format_version=" << header.format_version << '\n'
        << "method=" << header.method << '\n'
        << "created_from=" << header.created_from << '\n'
        << "languages=";
    for (std::size_t i = 0; i < languages.size(); ++i)
      out << (i ? "," : "") << languages[i];
    out << '\n';
    for (const auto& [key, value] : header.parameters) out << key << '=' << value << '\n';
    finish(out, path);
  }

  auto param = [&](const char* key) {
    auto it = header.parameters.find(key);
    return it == header.parameters.end() ? std::string() : it->second;
  };
  for (const auto& lang : languages) {
    const auto path = associates_file(dir, lang);
    auto out = open_output(path);
    out << "#method=" << header.method << '\n'
        << "#min_tokens=" << param("min_tokens") << '\n'
        << "#max_list_len=" << param("max_list_len") << '\n'
        << "#reference=" << header.created_from << '\n';
    const auto& lists = store.lists(lang);
    for (const auto& [id, list] : lists)
      out << '#' << kTokensPrefix << id.str() << '=' << list.training_tokens << '\n';
    for (const auto& [id, list] : lists) {
      for (const auto& e : list.entries)
        out << id.str() << '\t' << e.lemma << '\t' << str::format_double(e.weight) << '\n';
    }
    finish(out, path);
  }
}

AssociateStore load_store(const fs::path& dir, Warnings* warnings) {
  auto warn = [&](std::string msg) {
    if (warnings) warnings->push_back(std::move(msg));
  };

  const auto meta_path = dir / kStoreMetaFile;
  const auto meta_name = meta_path.string();
  StoreHeader header;
  std::vector<std::string> languages;
  bool saw_version = false;
  for_each_data_line(meta_path, "store header", [&](std::size_t line_no, std::string_view line) {
    auto [key, value] = split_key_value(line, meta_name, line_no);
    if (key == "format_version") {
      const auto v = str::parse_u64(value);
      if (!v) throw ParseError(meta_name, line_no, "bad format_version '" + value + "'");
      if (*v != static_cast<std::uint64_t>(StoreHeader::kFormatVersion))
        throw Error(Errc::version_mismatch,
                    meta_name + ": store format version " + value +
                        " is not supported (expected " +
                        std::to_string(StoreHeader::kFormatVersion) + ")");
      header.format_version = static_cast<int>(*v);
      saw_version = true;
    } else if (key == "method") {
      header.method = value;
    } else if (key == "created_from") {
      header.created_from = value;
    } else if (key == "languages") {
      for (auto l : str::split(value, ','))
        if (!l.empty()) languages.emplace_back(l);
    } else {
      header.parameters[key] = value;
    }
  });
  if (!saw_version)
    throw Error(Errc::version_mismatch, meta_name + ": missing format_version");

  AssociateStore store(std::move(header));
  for (const auto& lang : languages) {
    const auto path = associates_file(dir, lang);
    const auto source = path.string();
    auto in = open_input(path, "associate list");

    std::map<DescriptorId, AssociateList> lists;
    std::map<DescriptorId, std::uint64_t> tokens;
    std::map<DescriptorId, std::set<std::string, std::less<>>> seen_lemmas;
    DescriptorId previous;
    bool grouped = true;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      const auto line = str::strip_cr(raw);
      if (str::trim(line).empty()) continue;
      if (line.front() == '#') {
        const auto body = line.substr(1);
        if (body.starts_with(kTokensPrefix)) {
          auto [key, value] = split_key_value(body, source, line_no);
          const auto n = str::parse_u64(value);
          if (!n) throw ParseError(source, line_no, "bad training token count '" + value + "'");
          tokens[DescriptorId(key.substr(kTokensPrefix.size()))] = *n;
        } else if (body.starts_with("method=") &&
                   body.substr(7) != store.header().method) {
          warn(source + ":" + std::to_string(line_no) + ": method '" +
               std::string(body.substr(7)) + "' differs from store.meta");
        }
        continue;
      }
      const auto cols = str::split(line, '\t');
      if (cols.size() != 3)
        throw ParseError(source, line_no,
                         "expected descriptor_id<TAB>lemma<TAB>weight, got " +
                             std::to_string(cols.size()) + " columns");
      if (cols[0].empty() || cols[1].empty())
        throw ParseError(source, line_no, "empty descriptor id or lemma");
      const auto weight = str::parse_double(cols[2]);
      if (!weight || !std::isfinite(*weight))
        throw ParseError(source, line_no, "malformed weight '" + std::string(cols[2]) + "'");
      if (*weight <= 0.0)
        throw ParseError(source, line_no,
                         "weight must be positive, got '" + std::string(cols[2]) + "'");

      DescriptorId id{std::string(cols[0])};
      if (!previous.empty() && id != previous &&
          (id < previous || lists.contains(id)))
        grouped = false;
      previous = id;
      if (!seen_lemmas[id].emplace(cols[1]).second)
        throw ParseError(source, line_no,
                         "duplicate associate '" + std::string(cols[1]) + "' for " + id.str());
      auto& list = lists[id];
      if (list.descriptor.empty()) {
        list.descriptor = id;
        list.language = lang;
      }
      list.entries.push_back({std::string(cols[1]), *weight});
    }
    if (in.bad()) throw Error(Errc::io, "failed reading " + source);

    if (!grouped) warn(source + ": descriptors not grouped in sorted order; re-sorted");
    for (auto& [id, list] : lists) {
      if (canonicalize(list)) warn(source + ": entries of " + id.str() + " not sorted; re-sorted");
      if (auto it = tokens.find(id); it != tokens.end()) list.training_tokens = it->second;
      store.add(std::move(list));
    }
  }
  return store;
}

LemmaMap load_lemma_map(const fs::path& path) {
  LemmaMap map;
  const auto source = path.string();
  for_each_data_line(path, "lemma map", [&](std::size_t line_no, std::string_view line) {
    const auto cols = str::split(line, '\t');
    if (cols.size() != 2 || str::trim(cols[0]).empty() || str::trim(cols[1]).empty())
      throw ParseError(source, line_no, "expected surface<TAB>lemma");
    map.add(str::trim(cols[0]), str::trim(cols[1]));
  });
  return map;
}

StopList load_stop_list(const fs::path& path) {
  StopList stop;
  for_each_data_line(path, "stop list", [&](std::size_t, std::string_view line) {
    stop.add(str::trim(line));
  });
  return stop;
}

MultiwordList load_multiword_list(const fs::path& path) {
  MultiwordList mw;
  const auto source = path.string();
  for_each_data_line(path, "multiword list", [&](std::size_t line_no, std::string_view line) {
    try {
      mw.add(line);
    } catch (const Error& e) {
      throw ParseError(source, line_no, e.what());
    }
  });
  return mw;
}

void write_frequency_table(std::ostream& out, const FrequencyTable& table) {
  for (const auto& [lemma, n] : table) out << lemma << '\t' << n << '\n';
}

void save_frequency_table(const FrequencyTable& table, const fs::path& path) {
  auto out = open_output(path);
  write_frequency_table(out, table);
  finish(out, path);
}

FrequencyTable load_frequency_table(const fs::path& path) {
  FrequencyTable table;
  const auto source = path.string();
  for_each_data_line(path, "frequency table", [&](std::size_t line_no, std::string_view line) {
    const auto cols = str::split(line, '\t');
    if (cols.size() != 2 || cols[0].empty())
      throw ParseError(source, line_no, "expected lemma<TAB>count");
    const auto n = str::parse_u64(cols[1]);
    if (!n) throw ParseError(source, line_no, "bad count '" + std::string(cols[1]) + "'");
    if (table.contains(cols[0]))
      throw ParseError(source, line_no, "duplicate lemma '" + std::string(cols[0]) + "'");
    table.add(cols[0], *n);
  });
  return table;
}

std::vector<ManifestEntry> load_manifest(const fs::path& path) {
  std::vector<ManifestEntry> entries;
  std::set<std::string> ids;
  const auto source = path.string();
  const auto base = path.parent_path();
  for_each_data_line(path, "corpus manifest", [&](std::size_t line_no, std::string_view line) {
    const auto cols = str::split(line, '\t');
    if (cols.size() != 5)
      throw ParseError(source, line_no,
                       "expected doc_id, language, subcorpus, path, descriptors (5 columns), got " +
                           std::to_string(cols.size()));
    ManifestEntry e;
    e.doc_id = std::string(cols[0]);
    e.language = std::string(cols[1]);
    e.subcorpus = cols[2] == "-" ? std::string() : std::string(cols[2]);
    if (e.doc_id.empty() || e.language.empty() || cols[3].empty())
      throw ParseError(source, line_no, "empty doc_id, language or path");
    if (!ids.insert(e.doc_id).second)
      throw ParseError(source, line_no, "duplicate doc_id '" + e.doc_id + "'");
    const fs::path rel{std::string(cols[3])};
    e.path = rel.is_absolute() ? rel : base / rel;
    for (auto id : str::split(cols[4], ',')) {
      id = str::trim(id);
      if (!id.empty()) e.descriptors.emplace(std::string(id));
    }
    entries.push_back(std::move(e));
  });
  return entries;
}

const Pipeline& PipelineSet::for_language(std::string_view lang) const {
  auto it = by_language.find(lang);
  return it == by_language.end() ? fallback : it->second;
}

std::string read_text_file(const fs::path& path) {
  auto in = open_input(path, "document");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<TrainingDocument> load_corpus(const std::vector<ManifestEntry>& manifest,
                                          const PipelineSet& pipelines) {
  std::vector<TrainingDocument> corpus;
  corpus.reserve(manifest.size());
  for (const auto& e : manifest) {
    const auto text = read_text_file(e.path);
    corpus.push_back({e.doc_id, e.language, e.subcorpus,
                      pipelines.for_language(e.language).process(text), e.descriptors});
  }
  return corpus;
}

void write_assignment(std::ostream& out, const Assignment& assignment,
                      const Thesaurus* thesaurus, std::string_view target_language) {
  out << "#doc_id=" << assignment.doc_id << "\tlanguage=" << assignment.language << '\n';
  for (const auto& r : assignment.ranked) {
    out << r.rank << '\t' << str::format_double(r.score) << '\t' << r.descriptor.str()
        << '\t'
        << (thesaurus ? thesaurus->label(r.descriptor, target_language) : r.descriptor.str())
        << '\n';
  }
}

std::vector<Assignment> read_assignments(std::istream& in, const std::string& source_name) {
  std::vector<Assignment> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = str::strip_cr(raw);
    if (str::trim(line).empty()) continue;
    if (line.starts_with("#doc_id=")) {
      Assignment a;
      for (auto part : str::split(line.substr(1), '\t')) {
        auto [key, value] = split_key_value(part, source_name, line_no);
        if (key == "doc_id") a.doc_id = value;
        else if (key == "language") a.language = value;
      }
      out.push_back(std::move(a));
      continue;
    }
    if (line.front() == '#') continue;
    if (out.empty())
      throw ParseError(source_name, line_no, "assignment row before any #doc_id= header");
    const auto cols = str::split(line, '\t');
    if (cols.size() != 4)
      throw ParseError(source_name, line_no,
                       "expected rank<TAB>score<TAB>descriptor_id<TAB>label");
    const auto rank = str::parse_u64(cols[0]);
    const auto score = str::parse_double(cols[1]);
    if (!rank || *rank == 0 || !score || !std::isfinite(*score) || *score < 0 || cols[2].empty())
      throw ParseError(source_name, line_no, "malformed assignment row");
    out.back().ranked.push_back(
        {DescriptorId(std::string(cols[2])), *score, static_cast<std::size_t>(*rank)});
  }
  if (in.bad()) throw Error(Errc::io, "failed reading " + source_name);
  return out;
}

std::vector<Assignment> load_assignments(const fs::path& path) {
  auto in = open_input(path, "assignments");
  return read_assignments(in, path.string());
}

}  // namespace kwassign
