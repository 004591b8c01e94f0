#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "kwassign/assigner.hpp"
#include "kwassign/cli.hpp"
#include "kwassign/evaluator.hpp"
#include "kwassign/keyness.hpp"
#include "kwassign/store.hpp"
#include "kwassign/textpipe.hpp"
#include "kwassign/thesaurus.hpp"
#include "kwassign/trainer.hpp"

namespace py = pybind11;
using namespace kwassign;

// Descriptor ids cross the boundary as plain str.
namespace pybind11::detail {
template <>
struct type_caster<DescriptorId> {
  PYBIND11_TYPE_CASTER(DescriptorId, const_name("str"));
  bool load(handle src, bool) {
    if (!py::isinstance<py::str>(src)) return false;
    value = DescriptorId(src.cast<std::string>());
    return true;
  }
  static handle cast(const DescriptorId& id, return_value_policy, handle) {
    return py::str(id.str()).release();
  }
};
}  // namespace pybind11::detail

namespace {

FrequencyTable table_from_dict(const std::map<std::string, std::uint64_t>& counts) {
  FrequencyTable t;
  for (const auto& [lemma, n] : counts) t.add(lemma, n);
  return t;
}

std::map<std::string, std::uint64_t> table_to_dict(const FrequencyTable& t) {
  return {t.begin(), t.end()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Thesaurus descriptor assignment from keyness-ranked associate lists";

  py::register_exception<Error>(m, "KwassignError", PyExc_RuntimeError);

  // textpipe
  m.def("fold_case", &fold_case);
  m.def("tokenize", &tokenize);
  m.def("mark_multiwords", [](const std::string& text, const std::vector<std::string>& exprs) {
    MultiwordList mw;
    for (const auto& e : exprs) mw.add(e);
    return mark_multiwords(text, mw);
  });

  py::class_<FrequencyTable>(m, "FrequencyTable")
      .def(py::init<>())
      .def(py::init(&table_from_dict), py::arg("counts"))
      .def("add", &FrequencyTable::add, py::arg("lemma"), py::arg("n") = 1)
      .def("count", &FrequencyTable::count)
      .def_property_readonly("total", &FrequencyTable::total)
      .def("__len__", &FrequencyTable::size)
      .def("__contains__", &FrequencyTable::contains)
      .def("to_dict", &table_to_dict)
      .def("__iadd__", &FrequencyTable::operator+=, py::return_value_policy::reference_internal)
      .def(py::self == py::self)
      .def("__repr__", [](const FrequencyTable& t) {
        return "<FrequencyTable " + std::to_string(t.size()) + " lemmas, total " +
               std::to_string(t.total()) + ">";
      });

  py::class_<Pipeline>(m, "Pipeline")
      .def(py::init([](const std::map<std::string, std::string>& lemmas,
                       const std::vector<std::string>& stopwords,
                       const std::vector<std::string>& multiwords) {
             Pipeline p;
             for (const auto& [surface, lemma] : lemmas) p.lemmas.add(surface, lemma);
             for (const auto& s : stopwords) p.stopwords.add(s);
             for (const auto& e : multiwords) p.multiwords.add(e);
             return p;
           }),
           py::arg("lemmas") = std::map<std::string, std::string>{},
           py::arg("stopwords") = std::vector<std::string>{},
           py::arg("multiwords") = std::vector<std::string>{})
      .def("process", &Pipeline::process);

  // keyness
  const auto cell_args = std::make_tuple(py::arg("doc_count"), py::arg("doc_total"),
                                         py::arg("ref_count"), py::arg("ref_total"));
  m.def("log_likelihood", [](std::uint64_t a, std::uint64_t n, std::uint64_t b, std::uint64_t r) {
    return log_likelihood(ContingencyCell{a, n, b, r});
  }, std::get<0>(cell_args), std::get<1>(cell_args), std::get<2>(cell_args), std::get<3>(cell_args));
  m.def("chi_square", [](std::uint64_t a, std::uint64_t n, std::uint64_t b, std::uint64_t r) {
    return chi_square(ContingencyCell{a, n, b, r});
  }, std::get<0>(cell_args), std::get<1>(cell_args), std::get<2>(cell_args), std::get<3>(cell_args));

  py::class_<Keyword>(m, "Keyword")
      .def_readonly("lemma", &Keyword::lemma)
      .def_readonly("keyness", &Keyword::keyness)
      .def_readonly("doc_freq", &Keyword::doc_freq)
      .def("__repr__", [](const Keyword& k) {
        return "<Keyword " + k.lemma + " " + std::to_string(k.keyness) + ">";
      });
  m.def("extract_keywords",
        [](const FrequencyTable& doc, const FrequencyTable& ref, const std::string& method,
           std::optional<std::size_t> limit, std::uint64_t min_doc_freq) {
          KeywordOptions opt;
          opt.method = parse_keyness_method(method);
          opt.limit = limit.value_or(kUnlimited);
          opt.min_doc_freq = min_doc_freq;
          return extract_keywords(doc, ref, opt);
        },
        py::arg("doc"), py::arg("ref"), py::arg("method") = "loglik",
        py::arg("limit") = py::none(), py::arg("min_doc_freq") = 1);

  // thesaurus
  py::class_<Thesaurus>(m, "Thesaurus")
      .def("__len__", &Thesaurus::size)
      .def("__contains__", &Thesaurus::contains)
      .def("label", &Thesaurus::label)
      .def("neighbors", &Thesaurus::neighbors)
      .def_property_readonly("languages", &Thesaurus::languages)
      .def_property_readonly("warnings", &Thesaurus::warnings)
      .def("ids", [](const Thesaurus& t) {
        std::vector<DescriptorId> ids;
        for (const auto& [id, d] : t.descriptors()) ids.push_back(id);
        return ids;
      })
      .def("broader", [](const Thesaurus& t, const DescriptorId& id) { return t.at(id).broader; })
      .def("narrower", [](const Thesaurus& t, const DescriptorId& id) { return t.at(id).narrower; })
      .def("related", [](const Thesaurus& t, const DescriptorId& id) { return t.at(id).related; });
  m.def("load_thesaurus", [](const fs::path& path, std::size_t max_depth) {
    return load_thesaurus(path, ThesaurusOptions{max_depth});
  }, py::arg("path"), py::arg("max_depth") = 8);
  m.def("parse_thesaurus", [](const std::string& text, std::size_t max_depth) {
    std::istringstream in(text);
    return parse_thesaurus(in, "<string>", ThesaurusOptions{max_depth});
  }, py::arg("text"), py::arg("max_depth") = 8);

  // trainer / store
  py::class_<AssociateStore>(m, "AssociateStore")
      .def_property_readonly("languages", &AssociateStore::languages)
      .def("__len__", &AssociateStore::list_count)
      .def("associates", [](const AssociateStore& s, const std::string& lang, const DescriptorId& id) {
        std::vector<std::pair<std::string, double>> out;
        if (const auto* list = s.find(lang, id))
          for (const auto& e : list->entries) out.emplace_back(e.lemma, e.weight);
        return out;
      })
      .def("descriptors", [](const AssociateStore& s, const std::string& lang) {
        std::vector<DescriptorId> ids;
        for (const auto& [id, list] : s.lists(lang)) ids.push_back(id);
        return ids;
      })
      .def_property_readonly("parameters", [](const AssociateStore& s) { return s.header().parameters; })
      .def(py::self == py::self);
  m.def("load_store", [](const fs::path& dir) { return load_store(dir); });
  m.def("save_store", &save_store);

  py::class_<TrainingReport>(m, "TrainingReport").def("summary", &TrainingReport::summary);

  m.def("train_from_manifest",
        [](const fs::path& manifest, const Thesaurus& thesaurus,
           const std::map<std::string, Pipeline>& pipelines, const std::string& method,
           std::uint64_t min_tokens, std::optional<std::size_t> max_list_len) {
          PipelineSet ps;
          for (const auto& [lang, p] : pipelines) ps.by_language[lang] = p;
          const auto corpus = load_corpus(load_manifest(manifest), ps);
          TrainConfig cfg;
          cfg.method = parse_keyness_method(method);
          cfg.min_tokens = min_tokens;
          cfg.max_list_len = max_list_len.value_or(kUnlimited);
          py::gil_scoped_release release;
          auto result = train(corpus, thesaurus, cfg);
          return std::make_pair(std::move(result.store), std::move(result.report));
        },
        py::arg("manifest"), py::arg("thesaurus"),
        py::arg("pipelines") = std::map<std::string, Pipeline>{}, py::arg("method") = "loglik",
        py::arg("min_tokens") = 1000, py::arg("max_list_len") = 500);

  // assigner
  py::class_<RankedDescriptor>(m, "RankedDescriptor")
      .def_readonly("descriptor", &RankedDescriptor::descriptor)
      .def_readonly("score", &RankedDescriptor::score)
      .def_readonly("rank", &RankedDescriptor::rank);
  py::class_<Assignment>(m, "Assignment")
      .def(py::init([](std::string doc_id, std::string language,
                       const std::vector<std::pair<DescriptorId, double>>& ranked) {
             Assignment a{std::move(doc_id), std::move(language), {}};
             for (const auto& [id, score] : ranked) a.ranked.push_back({id, score, a.ranked.size() + 1});
             return a;
           }),
           py::arg("doc_id"), py::arg("language"), py::arg("ranked"))
      .def_readonly("doc_id", &Assignment::doc_id)
      .def_readonly("language", &Assignment::language)
      .def_readonly("ranked", &Assignment::ranked)
      .def("descriptor_ids", &Assignment::descriptor_ids);
  m.def("assign",
        [](const std::string& doc_id, const FrequencyTable& doc, const AssociateStore& store,
           const std::string& language, std::optional<std::size_t> top_n, bool per_thousand) {
          AssignOptions opt;
          opt.top_n = top_n.value_or(kUnlimited);
          opt.per_thousand_tokens = per_thousand;
          return assign(doc_id, doc, store, language, opt);
        },
        py::arg("doc_id"), py::arg("doc"), py::arg("store"), py::arg("language"),
        py::arg("top_n") = 25, py::arg("per_thousand_tokens") = false);
  m.def("display", [](const Assignment& a, const Thesaurus& t, const std::string& lang) {
    std::vector<std::tuple<std::size_t, double, DescriptorId, std::string>> rows;
    for (auto& r : display(a, t, lang)) rows.emplace_back(r.rank, r.score, r.descriptor, r.label);
    return rows;
  });
  m.def("similarity",
        [](const Assignment& a, const Assignment& b, std::size_t k, const std::string& metric) {
          return similarity(a, b, k, parse_similarity_metric(metric)).value;
        },
        py::arg("a"), py::arg("b"), py::arg("k") = 10, py::arg("metric") = "jaccard");

  // evaluator
  m.def("evaluate",
        [](const std::vector<std::tuple<std::string, std::vector<DescriptorId>, DescriptorSet>>& docs,
           const Thesaurus* thesaurus, std::vector<std::size_t> ranks, const std::string& mode,
           const std::string& aggregation, bool varying) {
          std::vector<EvalDocument> eval;
          for (const auto& [id, ranked, gold] : docs) eval.push_back({id, ranked, gold});
          EvalConfig cfg;
          if (!ranks.empty()) cfg.ranks = std::move(ranks);
          cfg.mode = parse_match_mode(mode);
          cfg.aggregation = parse_aggregation(aggregation);
          const auto report = varying ? evaluate_varying(eval, thesaurus, cfg)
                                      : evaluate(eval, thesaurus, cfg);
          std::vector<std::tuple<std::size_t, double, double>> rows;
          for (const auto& r : report.results) rows.emplace_back(r.rank, r.recall, r.precision);
          return rows;
        },
        py::arg("docs"), py::arg("thesaurus") = nullptr,
        py::arg("ranks") = std::vector<std::size_t>{}, py::arg("mode") = "strict",
        py::arg("aggregation") = "micro", py::arg("varying") = false);
  m.def("random_baseline", &random_baseline, py::arg("num_descriptors"), py::arg("k") = 1);
  m.def("format_percent", &format_percent, py::arg("fraction"), py::arg("decimals") = 3);

  // command line
  m.def("run_cli", [](std::vector<std::string> args) {
    args.insert(args.begin(), "kwassign");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
