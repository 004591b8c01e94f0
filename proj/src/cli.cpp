#include "kwassign/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "kwassign/assigner.hpp"
#include "kwassign/evaluator.hpp"
#include "kwassign/keyness.hpp"
#include "kwassign/store.hpp"
#include "kwassign/textpipe.hpp"
#include "kwassign/thesaurus.hpp"
#include "kwassign/trainer.hpp"
#include "strings.hpp"

namespace kwassign::cli {

namespace {

// A precondition of the command line itself rather than of the data.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ResourceFlags {
  std::vector<std::string> lemmas;
  std::vector<std::string> stoplists;
  std::vector<std::string> multiwords;
};

void add_resource_flags(CLI::App* cmd, ResourceFlags& r) {
  cmd->add_option("--lemmas", r.lemmas,
                  "Lemma map file, optionally prefixed LANG= (repeatable)");
  cmd->add_option("--stoplist", r.stoplists,
                  "Stop list file, optionally prefixed LANG= (repeatable)");
  cmd->add_option("--multiwords", r.multiwords,
                  "Multiword list file, optionally prefixed LANG= (repeatable)");
}

// "es=path" -> {"es", "path"}; "path" -> {"", "path"}. A language prefix is
// at most 8 characters without path separators.
std::pair<std::string, std::string> split_lang_path(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq != std::string::npos && eq > 0 && eq <= 8 &&
      arg.find_first_of("/\\.") > eq)
    return {arg.substr(0, eq), arg.substr(eq + 1)};
  return {"", arg};
}

PipelineSet load_pipelines(const ResourceFlags& r) {
  PipelineSet set;
  // Unprefixed files form the fallback; a language with any prefixed file
  // starts from the fallback and overrides what it names.
  auto load_into = [&r](Pipeline& p, const std::string& wanted) {
    for (const auto& arg : r.lemmas)
      if (auto [lang, path] = split_lang_path(arg); lang == wanted) p.lemmas = load_lemma_map(path);
    for (const auto& arg : r.stoplists)
      if (auto [lang, path] = split_lang_path(arg); lang == wanted) p.stopwords = load_stop_list(path);
    for (const auto& arg : r.multiwords)
      if (auto [lang, path] = split_lang_path(arg); lang == wanted)
        p.multiwords = load_multiword_list(path);
  };
  load_into(set.fallback, "");
  for (const auto* list : {&r.lemmas, &r.stoplists, &r.multiwords}) {
    for (const auto& arg : *list) {
      auto [lang, path] = split_lang_path(arg);
      if (lang.empty() || set.by_language.contains(lang)) continue;
      load_into(set.by_language.emplace(lang, set.fallback).first->second, lang);
    }
  }
  return set;
}

std::size_t parse_limit(const std::string& text, const char* flag) {
  if (text == "unlimited" || text == "0") return kUnlimited;
  const auto v = str::parse_u64(text);
  if (!v) throw UsageError(std::string(flag) + ": expected a count or 'unlimited'");
  return static_cast<std::size_t>(*v);
}

std::vector<std::size_t> parse_ranks(const std::string& text) {
  std::vector<std::size_t> ranks;
  for (auto part : str::split(text, ',')) {
    const auto v = str::parse_u64(str::trim(part));
    if (!v || *v == 0) throw UsageError("--ranks: expected positive integers, got '" + text + "'");
    ranks.push_back(static_cast<std::size_t>(*v));
  }
  for (std::size_t i = 1; i < ranks.size(); ++i)
    if (ranks[i] <= ranks[i - 1]) throw UsageError("--ranks must be strictly increasing");
  return ranks;
}

std::string doc_id_for(const std::string& path) {
  return fs::path(path).filename().string();
}

// Output sink honouring --output.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
      if (!*file_) throw Error(Errc::io, "cannot write " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }
  void close() {
    stream_->flush();
    if (!*stream_) throw Error(Errc::io, "failed writing output");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::string round_score(double score) {
  std::ostringstream os;
  os << std::llround(score);
  return os.str();
}

// ---- train ---------------------------------------------------------------

struct TrainArgs {
  std::string corpus, thesaurus, out, method = "loglik", reference, report;
  std::uint64_t min_tokens = 1000;
  std::string max_list_len = "500";
  bool subcorpus_reference = false;
  unsigned threads = 0;
  ResourceFlags resources;
};

void run_train(const TrainArgs& a, std::ostream& err) {
  if (!a.reference.empty() && a.subcorpus_reference)
    throw UsageError("--reference and --subcorpus-reference are mutually exclusive");
  TrainConfig config;
  config.method = parse_keyness_method(a.method);
  config.min_tokens = a.min_tokens;
  config.max_list_len = parse_limit(a.max_list_len, "--max-list-len");
  config.threads = a.threads;
  if (!a.reference.empty()) {
    config.reference_mode = ReferenceMode::external;
    config.external_reference = load_frequency_table(a.reference);
    config.reference_description = "external:" + fs::path(a.reference).filename().string();
  } else if (a.subcorpus_reference) {
    config.reference_mode = ReferenceMode::per_subcorpus;
  }

  const auto thesaurus = load_thesaurus(a.thesaurus);
  const auto pipelines = load_pipelines(a.resources);
  const auto corpus = load_corpus(load_manifest(a.corpus), pipelines);
  const auto result = train(corpus, thesaurus, config);
  save_store(result.store, a.out);

  std::ostringstream report;
  report << result.report.summary();
  for (const auto& lang : result.report.languages) {
    report << lang.language << ": average " << std::fixed << std::setprecision(2)
           << lang.gold_avg << " gold descriptors per document\n";
    for (const auto& s : lang.skipped) {
      if (s.training_tokens == 0) continue;
      report << lang.language << "\tskipped\t" << s.descriptor.str() << '\t'
             << s.training_tokens << " tokens\t"
             << (s.reason == SkipReason::insufficient_tokens ? "below min_tokens"
                                                             : "no associates")
             << '\n';
    }
  }
  if (a.report.empty()) {
    err << report.str();
  } else {
    Sink sink(a.report, err);
    *sink << report.str();
    sink.close();
  }
}

// ---- assign --------------------------------------------------------------

struct AssignArgs {
  std::vector<std::string> docs;
  std::string manifest, store, source_lang, target_lang, thesaurus, format = "tsv", output;
  std::string top = "25";
  bool per_thousand = false;
  ResourceFlags resources;
};

void run_assign(const AssignArgs& a, std::ostream& out) {
  if (a.docs.empty() == a.manifest.empty())
    throw UsageError("assign needs either --doc or --manifest");
  if (a.format != "tsv" && a.format != "table") throw UsageError("--format must be tsv or table");

  const auto store = load_store(a.store);
  std::optional<Thesaurus> thesaurus;
  if (!a.thesaurus.empty()) thesaurus = load_thesaurus(a.thesaurus);
  if (!a.target_lang.empty() && !thesaurus)
    throw UsageError("--lang needs --thesaurus to look up labels");
  if (thesaurus && !a.target_lang.empty() && !thesaurus->supports_language(a.target_lang))
    throw Error(Errc::unknown_language,
                "thesaurus has no labels for language '" + a.target_lang + "'");

  struct Input {
    std::string doc_id, language;
    fs::path path;
  };
  std::vector<Input> inputs;
  if (!a.manifest.empty()) {
    for (const auto& e : load_manifest(a.manifest)) inputs.push_back({e.doc_id, e.language, e.path});
  } else {
    std::string lang = a.source_lang;
    if (lang.empty()) {
      const auto langs = store.languages();
      if (langs.size() != 1)
        throw UsageError("--source-lang is required when the store has several languages");
      lang = langs.front();
    }
    for (const auto& d : a.docs) inputs.push_back({doc_id_for(d), lang, d});
  }

  const auto pipelines = load_pipelines(a.resources);
  AssignOptions options;
  options.top_n = parse_limit(a.top, "--top");
  options.per_thousand_tokens = a.per_thousand;

  std::map<std::string, Assigner> assigners;
  Sink sink(a.output, out);
  for (const auto& in : inputs) {
    auto it = assigners.find(in.language);
    if (it == assigners.end()) it = assigners.emplace(in.language, Assigner(store, in.language)).first;
    const auto table = pipelines.for_language(in.language).process(read_text_file(in.path));
    const auto assignment = it->second.assign(in.doc_id, table, options);
    const std::string display_lang =
        !a.target_lang.empty() ? a.target_lang
        : (thesaurus && thesaurus->supports_language(in.language)) ? in.language
        : (thesaurus ? thesaurus->languages().front() : std::string());
    if (a.format == "tsv") {
      write_assignment(*sink, assignment, thesaurus ? &*thesaurus : nullptr, display_lang);
    } else {
      *sink << "Document " << assignment.doc_id << " (" << assignment.language << ")\n";
      *sink << std::left << std::setw(6) << "Rank" << std::setw(10) << "Score" << "Descriptor\n";
      for (const auto& r : assignment.ranked) {
        *sink << std::left << std::setw(6) << r.rank << std::setw(10) << round_score(r.score)
              << (thesaurus ? thesaurus->label(r.descriptor, display_lang) : r.descriptor.str())
              << '\n';
      }
    }
  }
  sink.close();
}

// ---- keywords / table ----------------------------------------------------

struct KeywordsArgs {
  std::string doc, reference, method = "loglik", lang, format = "tsv", output;
  std::string limit = "50";
  std::uint64_t min_doc_freq = 1;
  ResourceFlags resources;
};

void run_keywords(const KeywordsArgs& a, std::ostream& out) {
  if (a.format != "tsv" && a.format != "table") throw UsageError("--format must be tsv or table");
  KeywordOptions options;
  options.method = parse_keyness_method(a.method);
  options.limit = parse_limit(a.limit, "--limit");
  options.min_doc_freq = a.min_doc_freq;

  const auto ref = load_frequency_table(a.reference);
  const auto pipelines = load_pipelines(a.resources);
  const auto doc = pipelines.for_language(a.lang).process(read_text_file(a.doc));
  const auto keywords = extract_keywords(doc, ref, options);

  Sink sink(a.output, out);
  if (a.format == "table")
    *sink << std::left << std::setw(24) << "Keywords" << "Keyness\n";
  for (const auto& k : keywords) {
    if (a.format == "tsv") {
      *sink << k.lemma << '\t' << str::format_double(k.keyness) << '\t' << k.doc_freq << '\n';
    } else {
      *sink << std::left << std::setw(24) << k.lemma << std::fixed << std::setprecision(2)
            << k.keyness << '\n';
    }
  }
  sink.close();
}

struct TableArgs {
  std::vector<std::string> docs;
  std::string manifest, lang, output;
  ResourceFlags resources;
};

void run_table(const TableArgs& a, std::ostream& out) {
  if (a.docs.empty() && a.manifest.empty())
    throw UsageError("table needs --doc or --manifest");
  const auto pipelines = load_pipelines(a.resources);
  FrequencyTable table;
  for (const auto& d : a.docs) table += pipelines.for_language(a.lang).process(read_text_file(d));
  if (!a.manifest.empty()) {
    for (const auto& e : load_manifest(a.manifest)) {
      if (!a.lang.empty() && e.language != a.lang) continue;
      table += pipelines.for_language(e.language).process(read_text_file(e.path));
    }
  }
  Sink sink(a.output, out);
  write_frequency_table(*sink, table);
  sink.close();
}

// ---- evaluate ------------------------------------------------------------

struct EvaluateArgs {
  std::string assignments, gold, thesaurus, store, mode = "both", aggregation = "micro";
  std::string ranks = "1,2,3,5,7,10,15,20,25,30,50,100", format = "table", output, label;
  bool exclude_untrained = false;
};

void run_evaluate(const EvaluateArgs& a, std::ostream& out) {
  if (a.mode != "strict" && a.mode != "relaxed" && a.mode != "both")
    throw UsageError("--mode must be strict, relaxed or both");
  if (a.format != "tsv" && a.format != "table") throw UsageError("--format must be tsv or table");
  if (a.mode != "strict" && a.thesaurus.empty())
    throw UsageError("--mode " + a.mode + " needs --thesaurus");
  if (a.exclude_untrained && a.store.empty())
    throw UsageError("--exclude-untrained needs --store");

  EvalConfig config;
  config.ranks = parse_ranks(a.ranks);
  config.aggregation = parse_aggregation(a.aggregation);

  std::optional<Thesaurus> thesaurus;
  if (!a.thesaurus.empty()) thesaurus = load_thesaurus(a.thesaurus);
  const Thesaurus* t = thesaurus ? &*thesaurus : nullptr;

  if (a.exclude_untrained) {
    DescriptorSet trained;
    const auto store = load_store(a.store);
    for (const auto& lang : store.languages())
      for (const auto& [id, list] : store.lists(lang)) trained.insert(id);
    config.trained_only = std::move(trained);
  }

  std::map<std::string, DescriptorSet> gold;
  for (auto& e : load_manifest(a.gold)) gold.emplace(e.doc_id, std::move(e.descriptors));
  std::vector<EvalDocument> docs;
  for (const auto& asg : load_assignments(a.assignments)) {
    auto it = gold.find(asg.doc_id);
    if (it == gold.end())
      throw Error(Errc::invalid_argument,
                  "document '" + asg.doc_id + "' has no entry in the gold manifest");
    docs.push_back({asg.doc_id, asg.descriptor_ids(), it->second});
  }

  std::vector<EvalReport> reports;
  std::vector<EvalReport> varying;
  for (const auto mode : {MatchMode::strict, MatchMode::relaxed}) {
    if (a.mode != "both" && a.mode != to_string(mode)) continue;
    config.mode = mode;
    reports.push_back(evaluate(docs, t, config));
    varying.push_back(evaluate_varying(docs, t, config));
  }

  Sink sink(a.output, out);
  const auto& first = reports.front();
  if (a.format == "table") {
    if (!a.label.empty()) *sink << "Evaluation: " << a.label << '\n';
    *sink << first.doc_count << " documents, " << std::fixed << std::setprecision(2)
          << first.gold_avg << " gold descriptors per document, "
          << to_string(first.aggregation) << " average";
    if (first.excluded_empty_gold) *sink << ", " << first.excluded_empty_gold << " without gold excluded";
    if (first.excluded_untrained) *sink << ", " << first.excluded_untrained << " untrained excluded";
    *sink << "\n\n";
    *sink << format_eval_table(reports[0], reports.size() > 1 ? &reports[1] : nullptr,
                               &varying[0], varying.size() > 1 ? &varying[1] : nullptr)
          << '\n';
  } else {
    std::vector<EvalReport> all;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      all.push_back(reports[i]);
      all.push_back(varying[i]);
    }
    *sink << format_eval_tsv(all);
  }
  sink.close();
}

// ---- similar -------------------------------------------------------------

struct SimilarArgs {
  std::string a, b, doc_a, doc_b, assignments, metric = "jaccard", output;
  std::size_t k = 10;
};

const Assignment& pick(const std::vector<Assignment>& list, const std::string& doc_id,
                       const std::string& source) {
  if (list.empty()) throw Error(Errc::invalid_argument, source + " contains no assignments");
  if (doc_id.empty()) return list.front();
  for (const auto& x : list)
    if (x.doc_id == doc_id) return x;
  throw Error(Errc::invalid_argument, "document '" + doc_id + "' not found in " + source);
}

void run_similar(const SimilarArgs& a, std::ostream& out) {
  const auto metric = parse_similarity_metric(a.metric);
  if (a.k == 0) throw UsageError("--k must be at least 1");
  Sink sink(a.output, out);
  auto emit = [&](const Assignment& x, const Assignment& y) {
    const auto s = similarity(x, y, a.k, metric);
    *sink << x.doc_id << '\t' << y.doc_id << '\t' << to_string(metric) << '\t' << s.k << '\t'
          << str::format_double(s.value) << '\n';
  };
  if (!a.assignments.empty()) {
    if (!a.a.empty() || !a.b.empty())
      throw UsageError("--assignments cannot be combined with --a/--b");
    const auto all = load_assignments(a.assignments);
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j) emit(all[i], all[j]);
  } else {
    if (a.a.empty() || a.b.empty()) throw UsageError("similar needs --a and --b, or --assignments");
    const auto la = load_assignments(a.a);
    const auto lb = load_assignments(a.b);
    emit(pick(la, a.doc_a, a.a), pick(lb, a.doc_b, a.b));
  }
  sink.close();
}

// ---- validate-thesaurus --------------------------------------------------

struct ValidateArgs {
  std::string thesaurus;
  std::size_t max_depth = 8;
};

void run_validate(const ValidateArgs& a, std::ostream& out, std::ostream& err) {
  ThesaurusOptions options;
  options.max_depth = a.max_depth;
  const auto t = load_thesaurus(a.thesaurus, options);
  out << "descriptors\t" << t.size() << '\n'
      << "languages\t";
  for (std::size_t i = 0; i < t.languages().size(); ++i) out << (i ? "," : "") << t.languages()[i];
  out << '\n'
      << "fields\t" << t.fields().size() << '\n'
      << "microthesauri\t" << t.microthesauri().size() << '\n'
      << "bt_nt_relations\t" << t.broader_relation_count() << '\n'
      << "rt_relations\t" << t.related_relation_count() << '\n'
      << "max_depth\t" << t.max_depth() << '\n';
  for (const auto& w : t.warnings()) err << "warning: " << w << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Controlled-vocabulary descriptor assignment with keyness-trained associate lists",
               "kwassign"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read default flag values from an INI/TOML file")
      ->envname("KWASSIGN_CONFIG");

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "Build an associate store from an indexed corpus");
  train_cmd->add_option("--corpus", train_args.corpus, "Corpus manifest")->required();
  train_cmd->add_option("--thesaurus", train_args.thesaurus, "Thesaurus file")->required();
  train_cmd->add_option("--out", train_args.out, "Store directory to write")->required();
  train_cmd->add_option("--method", train_args.method, "loglik or chisq")->capture_default_str();
  train_cmd->add_option("--min-tokens", train_args.min_tokens,
                        "Minimum mega-document size for a descriptor")->capture_default_str();
  train_cmd->add_option("--max-list-len", train_args.max_list_len,
                        "Associates kept per descriptor, or 'unlimited'")->capture_default_str();
  train_cmd->add_option("--reference", train_args.reference,
                        "External reference frequency table (lemma<TAB>count)");
  train_cmd->add_flag("--subcorpus-reference", train_args.subcorpus_reference,
                      "Use the subcorpora of each descriptor's documents as its reference");
  train_cmd->add_option("--threads", train_args.threads, "Worker threads (0: all cores)");
  train_cmd->add_option("--report", train_args.report, "Write the training report here");
  add_resource_flags(train_cmd, train_args.resources);

  AssignArgs assign_args;
  auto* assign_cmd = app.add_subcommand("assign", "Rank descriptors for new documents");
  assign_cmd->add_option("--doc", assign_args.docs, "Plain-text document (repeatable)");
  assign_cmd->add_option("--manifest", assign_args.manifest, "Corpus manifest for batch mode");
  assign_cmd->add_option("--store", assign_args.store, "Store directory")->required();
  assign_cmd->add_option("--source-lang", assign_args.source_lang,
                         "Language of --doc files (default: the store's only language)");
  assign_cmd->add_option("--lang", assign_args.target_lang, "Display language for labels");
  assign_cmd->add_option("--thesaurus", assign_args.thesaurus, "Thesaurus for labels");
  assign_cmd->add_option("--top", assign_args.top, "Descriptors per document, or 'unlimited'")->capture_default_str();
  assign_cmd->add_flag("--per-thousand", assign_args.per_thousand,
                       "Normalise scores per 1000 document tokens");
  assign_cmd->add_option("--format", assign_args.format, "tsv or table")->capture_default_str();
  assign_cmd->add_option("--output", assign_args.output, "Output file (default stdout)");
  add_resource_flags(assign_cmd, assign_args.resources);

  KeywordsArgs kw_args;
  auto* kw_cmd = app.add_subcommand("keywords", "Keyness-ranked keywords of one document");
  kw_cmd->add_option("--doc", kw_args.doc, "Plain-text document")->required();
  kw_cmd->add_option("--reference", kw_args.reference, "Reference frequency table")->required();
  kw_cmd->add_option("--method", kw_args.method, "loglik or chisq")->capture_default_str();
  kw_cmd->add_option("--limit", kw_args.limit, "Keywords to list, or 'unlimited'")->capture_default_str();
  kw_cmd->add_option("--min-doc-freq", kw_args.min_doc_freq, "Minimum document count")->capture_default_str();
  kw_cmd->add_option("--lang", kw_args.lang, "Document language (selects resources)");
  kw_cmd->add_option("--format", kw_args.format, "tsv or table")->capture_default_str();
  kw_cmd->add_option("--output", kw_args.output, "Output file (default stdout)");
  add_resource_flags(kw_cmd, kw_args.resources);

  TableArgs table_args;
  auto* table_cmd = app.add_subcommand("table", "Build a lemma frequency table from texts");
  table_cmd->add_option("--doc", table_args.docs, "Plain-text document (repeatable)");
  table_cmd->add_option("--manifest", table_args.manifest, "Corpus manifest");
  table_cmd->add_option("--lang", table_args.lang, "Language (filters manifest entries)");
  table_cmd->add_option("--output", table_args.output, "Output file (default stdout)");
  add_resource_flags(table_cmd, table_args.resources);

  EvaluateArgs eval_args;
  auto* eval_cmd = app.add_subcommand("evaluate", "Recall and precision against gold descriptors");
  eval_cmd->add_option("--assignments", eval_args.assignments, "Output of assign (tsv)")->required();
  eval_cmd->add_option("--gold", eval_args.gold, "Manifest with gold descriptors")->required();
  eval_cmd->add_option("--thesaurus", eval_args.thesaurus, "Thesaurus (needed for relaxed)");
  eval_cmd->add_option("--mode", eval_args.mode, "strict, relaxed or both")->capture_default_str();
  eval_cmd->add_option("--aggregation", eval_args.aggregation, "micro or macro")->capture_default_str();
  eval_cmd->add_option("--ranks", eval_args.ranks, "Comma-separated ranks")->capture_default_str();
  eval_cmd->add_option("--format", eval_args.format, "table or tsv")->capture_default_str();
  eval_cmd->add_option("--output", eval_args.output, "Output file (default stdout)");
  eval_cmd->add_option("--label", eval_args.label, "Report label, e.g. resubstitution or held-out");
  eval_cmd->add_option("--store", eval_args.store, "Store (for --exclude-untrained)");
  eval_cmd->add_flag("--exclude-untrained", eval_args.exclude_untrained,
                     "Skip documents none of whose gold descriptors were trained");

  SimilarArgs sim_args;
  auto* sim_cmd = app.add_subcommand("similar", "Descriptor-overlap similarity of documents");
  sim_cmd->add_option("--a", sim_args.a, "Assignments file of the first document");
  sim_cmd->add_option("--b", sim_args.b, "Assignments file of the second document");
  sim_cmd->add_option("--doc-a", sim_args.doc_a, "Document id in --a (default: first)");
  sim_cmd->add_option("--doc-b", sim_args.doc_b, "Document id in --b (default: first)");
  sim_cmd->add_option("--assignments", sim_args.assignments, "Compare all pairs in one file");
  sim_cmd->add_option("--k", sim_args.k, "Top-k depth")->capture_default_str();
  sim_cmd->add_option("--metric", sim_args.metric, "jaccard or cosine")->capture_default_str();
  sim_cmd->add_option("--output", sim_args.output, "Output file (default stdout)");

  ValidateArgs val_args;
  auto* val_cmd = app.add_subcommand("validate-thesaurus", "Load and check a thesaurus file");
  val_cmd->add_option("thesaurus,--thesaurus", val_args.thesaurus, "Thesaurus file")->required();
  val_cmd->add_option("--max-depth", val_args.max_depth, "Maximum BT depth")->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train_cmd) run_train(train_args, err);
    else if (*assign_cmd) run_assign(assign_args, out);
    else if (*kw_cmd) run_keywords(kw_args, out);
    else if (*table_cmd) run_table(table_args, out);
    else if (*eval_cmd) run_evaluate(eval_args, out);
    else if (*sim_cmd) run_similar(sim_args, out);
    else if (*val_cmd) run_validate(val_args, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace kwassign::cli
