#include "kwassign/textpipe.hpp"

#include <algorithm>

#include "kwassign/error.hpp"
#include "utf8.hpp"

namespace kwassign {

namespace {

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (std::size_t i = 0; i < text.size();) {
    const auto d = utf8::decode(text, i);
    if (d.valid && utf8::is_space(d.cp)) {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else {
      current.append(text.substr(i, d.len));
    }
    i += d.len;
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

// One whitespace-delimited word of the input, with its punctuation edges
// split off. Offsets are byte positions into the original text.
struct WordSpan {
  std::size_t begin;
  std::size_t core_begin;
  std::size_t core_end;
  std::size_t end;
  std::string folded_core;

  bool has_leading_punct() const { return core_begin != begin; }
  bool has_trailing_punct() const { return core_end != end; }
};

std::vector<WordSpan> scan_words(std::string_view text) {
  std::vector<WordSpan> words;
  std::size_t i = 0;
  while (i < text.size()) {
    auto d = utf8::decode(text, i);
    if (d.valid && utf8::is_space(d.cp)) {
      i += d.len;
      continue;
    }
    WordSpan w{i, i, i, i, {}};
    // Walk the word, remembering the first and last word character.
    bool seen_word_char = false;
    while (i < text.size()) {
      d = utf8::decode(text, i);
      if (d.valid && utf8::is_space(d.cp)) break;
      if (d.valid && utf8::is_word_char(d.cp)) {
        if (!seen_word_char) w.core_begin = i;
        seen_word_char = true;
        w.core_end = i + d.len;
      }
      i += d.len;
    }
    w.end = i;
    if (!seen_word_char) w.core_begin = w.core_end = w.end;
    w.folded_core =
        fold_case(text.substr(w.core_begin, w.core_end - w.core_begin));
    words.push_back(std::move(w));
  }
  return words;
}

}  // namespace

std::string fold_case(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    const auto d = utf8::decode(text, i);
    if (d.valid) {
      utf8::append(out, utf8::to_lower(d.cp));
    } else {
      out.push_back(text[i]);
    }
    i += d.len;
  }
  return out;
}

void FrequencyTable::add(std::string_view lemma, std::uint64_t n) {
  if (n == 0) return;
  auto it = counts_.find(lemma);
  if (it == counts_.end()) {
    counts_.emplace(Lemma(lemma), n);
  } else {
    it->second += n;
  }
  total_ += n;
}

std::uint64_t FrequencyTable::count(std::string_view lemma) const {
  auto it = counts_.find(lemma);
  return it == counts_.end() ? 0 : it->second;
}

FrequencyTable& FrequencyTable::operator+=(const FrequencyTable& other) {
  for (const auto& [lemma, n] : other.counts_) add(lemma, n);
  return *this;
}

void LemmaMap::add(std::string_view surface, std::string_view lemma) {
  entries_.insert_or_assign(fold_case(surface), fold_case(lemma));
}

const std::string& LemmaMap::lookup(const std::string& surface) const {
  auto it = entries_.find(surface);
  return it == entries_.end() ? surface : it->second;
}

StopList::StopList(std::initializer_list<std::string_view> lemmas) {
  for (auto l : lemmas) add(l);
}

void StopList::add(std::string_view lemma) { lemmas_.insert(fold_case(lemma)); }

MultiwordList::MultiwordList(
    std::initializer_list<std::string_view> expressions) {
  for (auto e : expressions) add(e);
}

bool MultiwordList::add(std::string_view expression) {
  auto words = split_words(fold_case(expression));
  if (words.size() < 2) {
    throw Error(Errc::invalid_argument,
                "multiword expression needs at least two words: '" +
                    std::string(expression) + "'");
  }
  if (std::find(expressions_.begin(), expressions_.end(), words) !=
      expressions_.end()) {
    return false;
  }
  auto& bucket = by_first_word_[words.front()];
  bucket.push_back(words);
  std::stable_sort(bucket.begin(), bucket.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  expressions_.push_back(std::move(words));
  return true;
}

const std::vector<std::vector<std::string>>* MultiwordList::starting_with(
    const std::string& first_word) const {
  auto it = by_first_word_.find(first_word);
  return it == by_first_word_.end() ? nullptr : &it->second;
}

std::string mark_multiwords(std::string_view text, const MultiwordList& mw) {
  if (mw.empty()) return std::string(text);
  const auto words = scan_words(text);

  auto matches_at = [&](std::size_t i, const std::vector<std::string>& expr) {
    if (i + expr.size() > words.size()) return false;
    for (std::size_t j = 0; j < expr.size(); ++j) {
      const auto& w = words[i + j];
      if (w.folded_core != expr[j]) return false;
      if (j > 0 && w.has_leading_punct()) return false;
      if (j + 1 < expr.size() && w.has_trailing_punct()) return false;
    }
    return true;
  };

  std::string out;
  out.reserve(text.size());
  std::size_t copied = 0;
  for (std::size_t i = 0; i < words.size();) {
    std::size_t matched = 0;
    if (const auto* candidates = mw.starting_with(words[i].folded_core)) {
      for (const auto& expr : *candidates) {
        if (matches_at(i, expr)) {
          matched = expr.size();
          break;
        }
      }
    }
    if (matched == 0) {
      ++i;
      continue;
    }
    out.append(text.substr(copied, words[i].core_begin - copied));
    for (std::size_t j = 0; j < matched; ++j) {
      const auto& w = words[i + j];
      if (j > 0) out.push_back('_');
      out.append(text.substr(w.core_begin, w.core_end - w.core_begin));
    }
    copied = words[i + matched - 1].core_end;
    i += matched;
  }
  out.append(text.substr(copied));
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  bool has_content = false;  // a word character other than '_'

  auto flush = [&] {
    if (has_content) tokens.push_back(fold_case(current));
    current.clear();
    has_content = false;
  };

  for (std::size_t i = 0; i < text.size();) {
    const auto d = utf8::decode(text, i);
    if (d.valid && utf8::is_word_char(d.cp)) {
      current.append(text.substr(i, d.len));
      if (d.cp != '_') has_content = true;
    } else if (d.cp == '-' && !current.empty() && i + 1 < text.size()) {
      const auto next = utf8::decode(text, i + 1);
      if (next.valid && utf8::is_word_char(next.cp)) {
        current.push_back('-');
      } else {
        flush();
      }
    } else {
      flush();
    }
    i += d.len;
  }
  flush();
  return tokens;
}

std::vector<Lemma> lemmatize(std::span<const std::string> tokens,
                             const LemmaMap& map) {
  std::vector<Lemma> lemmas;
  lemmas.reserve(tokens.size());
  for (const auto& t : tokens) lemmas.push_back(map.lookup(t));
  return lemmas;
}

FrequencyTable build_table(std::span<const Lemma> lemmas, const StopList& stop) {
  FrequencyTable table;
  for (const auto& l : lemmas) {
    if (!stop.contains(l)) table.add(l);
  }
  return table;
}

FrequencyTable merge_tables(std::span<const FrequencyTable> tables) {
  FrequencyTable merged;
  for (const auto& t : tables) merged += t;
  return merged;
}

FrequencyTable Pipeline::process(std::string_view text) const {
  const auto tokens = tokenize(mark_multiwords(text, multiwords));
  const auto lemma_seq = lemmatize(tokens, lemmas);
  return build_table(lemma_seq, stopwords);
}

}  // namespace kwassign
