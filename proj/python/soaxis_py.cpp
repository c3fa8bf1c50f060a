#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "soaxis/soaxis.hpp"

namespace py = pybind11;
using namespace soaxis;

namespace {

std::vector<double> to_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

Polarity polarity_of(const std::string& s) {
  if (auto p = parse_polarity(s)) return *p;
  throw Error(ErrorKind::InvalidArgument, "unknown polarity '" + s + "'");
}

CorpusFormat format_of(const std::string& s) {
  if (auto f = parse_corpus_format(s)) return *f;
  throw Error(ErrorKind::InvalidArgument, "unknown corpus format '" + s + "'");
}

AxisMode mode_of(const std::string& s) {
  if (s == "unsup" || s == "unsupervised") return AxisMode::Unsupervised;
  if (s == "semi" || s == "semi-supervised") return AxisMode::SemiSupervised;
  throw Error(ErrorKind::InvalidArgument, "unknown axis mode '" + s + "'");
}

py::dict report_dict(const EvalReport& r) {
  py::dict d;
  d["accuracy"] = r.accuracy;
  d["n_total"] = r.n_total;
  d["n_correct"] = r.n_correct;
  d["n_pos_gold"] = r.n_pos_gold;
  d["n_neg_gold"] = r.n_neg_gold;
  d["n_undecided"] = r.n_undecided;
  d["confusion"] = r.confusion;
  d["config"] = r.config_snapshot;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "sentiment axis induction from word embeddings";

  static py::exception<Error> error_type(m, "SoaxisError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      exc.attr("stage") = e.stage();
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  // corpus
  py::class_<TaggedToken>(m, "TaggedToken")
      .def(py::init<std::string, std::string>(), py::arg("text"), py::arg("tag"))
      .def_readwrite("text", &TaggedToken::text)
      .def_readwrite("tag", &TaggedToken::tag)
      .def("__repr__", [](const TaggedToken& t) { return t.text + "/" + t.tag; });

  py::class_<TaggedDocument>(m, "TaggedDocument")
      .def(py::init([](std::string id, std::vector<std::pair<std::string, std::string>> tokens,
                       std::optional<std::string> label) {
             TaggedDocument d;
             d.id = std::move(id);
             for (auto& [w, t] : tokens) d.tokens.push_back({lowercase(w), t});
             if (label) d.label = polarity_of(*label);
             return d;
           }),
           py::arg("id"), py::arg("tokens"), py::arg("label") = py::none())
      .def_readonly("id", &TaggedDocument::id)
      .def_readonly("tokens", &TaggedDocument::tokens)
      .def_property_readonly("label", [](const TaggedDocument& d) -> std::optional<std::string> {
        if (!d.label) return std::nullopt;
        return std::string(to_string(*d.label));
      });

  py::class_<TaggedCorpus>(m, "TaggedCorpus")
      .def(py::init([](std::vector<TaggedDocument> docs) {
             TaggedCorpus c;
             c.documents = std::move(docs);
             return c;
           }),
           py::arg("documents"))
      .def_readonly("documents", &TaggedCorpus::documents)
      .def_readonly("source", &TaggedCorpus::source)
      .def("token_count", &TaggedCorpus::token_count)
      .def("__len__", [](const TaggedCorpus& c) { return c.documents.size(); });

  m.def(
      "load_corpus",
      [](const std::filesystem::path& path, std::optional<std::string> format) {
        return format ? load_tagged_corpus(path, format_of(*format)) : load_corpus_auto(path);
      },
      py::arg("path"), py::arg("format") = py::none());
  m.def(
      "parse_corpus", [](const std::string& text, const std::string& format) {
        return parse_tagged_corpus(text, format_of(format));
      },
      py::arg("text"), py::arg("format") = "b");
  m.def(
      "format_corpus",
      [](const TaggedCorpus& c, const std::string& format) { return format_tagged_corpus(c, format_of(format)); },
      py::arg("corpus"), py::arg("format") = "a");
  m.def("count_frequencies", [](const TaggedCorpus& c) { return count_frequencies(c).counts; });

  py::class_<PolarityLexicon>(m, "PolarityLexicon")
      .def_readonly("entries", &PolarityLexicon::entries)
      .def_readwrite("neutral_threshold", &PolarityLexicon::neutral_threshold)
      .def_readonly("duplicate_count", &PolarityLexicon::duplicate_count)
      .def("score", &PolarityLexicon::score)
      .def("__len__", &PolarityLexicon::size);
  m.def("load_polarity_lexicon", &load_polarity_lexicon, py::arg("path"));
  m.def("parse_polarity_lexicon", &parse_polarity_lexicon, py::arg("text"));

  // embedding
  py::class_<SgnsConfig>(m, "SgnsConfig")
      .def(py::init<>())
      .def_readwrite("dim", &SgnsConfig::dim)
      .def_readwrite("window", &SgnsConfig::window)
      .def_readwrite("negatives", &SgnsConfig::negatives)
      .def_readwrite("epochs", &SgnsConfig::epochs)
      .def_readwrite("initial_learning_rate", &SgnsConfig::initial_learning_rate)
      .def_readwrite("min_count", &SgnsConfig::min_count)
      .def_readwrite("subsample_threshold", &SgnsConfig::subsample_threshold)
      .def_readwrite("rng_seed", &SgnsConfig::rng_seed)
      .def_readwrite("threads", &SgnsConfig::threads);

  py::class_<EmbeddingTable>(m, "EmbeddingTable")
      .def(py::init<std::size_t>(), py::arg("dim"))
      .def("add", [](EmbeddingTable& t, std::string w, std::vector<double> v) { t.add(std::move(w), v); })
      .def_property_readonly("dim", &EmbeddingTable::dim)
      .def_property_readonly("words", &EmbeddingTable::words)
      .def_readonly("metadata", &EmbeddingTable::metadata)
      .def("__len__", &EmbeddingTable::size)
      .def("__contains__", &EmbeddingTable::contains)
      .def("vector", [](const EmbeddingTable& t, const std::string& w) { return to_vec(t.vector(w)); })
      .def("fingerprint", &EmbeddingTable::fingerprint)
      .def("scaled", &EmbeddingTable::scaled);

  m.def("train_sgns", &train_sgns, py::arg("corpus"), py::arg("config") = SgnsConfig{},
        py::call_guard<py::gil_scoped_release>());
  m.def("load_embeddings", &load_embeddings, py::arg("path"));
  m.def("save_embeddings", &save_embeddings, py::arg("table"), py::arg("path"));
  m.def("cosine_similarity", [](std::vector<double> a, std::vector<double> b) { return cosine_similarity(a, b); });
  m.def("cosine_distance", [](std::vector<double> a, std::vector<double> b) { return cosine_distance(a, b); });
  m.def("nearest_neighbors", &nearest_neighbors, py::arg("table"), py::arg("word"), py::arg("k") = 10);

  // patterns
  py::class_<PhraseOccurrence>(m, "PhraseOccurrence")
      .def_readonly("w1", &PhraseOccurrence::w1)
      .def_readonly("w2", &PhraseOccurrence::w2)
      .def_readonly("rule_index", &PhraseOccurrence::rule_index)
      .def_readonly("doc_id", &PhraseOccurrence::doc_id)
      .def_readonly("position", &PhraseOccurrence::position);
  m.def(
      "extract_phrases", [](const TaggedCorpus& c) { return extract_phrases(c, builtin_rules()); },
      py::arg("corpus"));

  py::class_<PointWordSet>(m, "PointWordSet")
      .def_readonly("words", &PointWordSet::words)
      .def_readonly("cutoff", &PointWordSet::cutoff)
      .def_readonly("word_counts", &PointWordSet::word_counts)
      .def("__len__", &PointWordSet::size);
  m.def("select_point_words", &select_point_words, py::arg("phrases"), py::arg("corpus"), py::arg("cutoff"),
        py::arg("include_jjr") = true);

  m.def(
      "tag_polarity_variance",
      [](const std::vector<std::tuple<std::string, std::string, double>>& items) {
        std::vector<AnnotatedToken> in;
        for (const auto& [w, t, p] : items) in.push_back({{w, t}, p});
        const auto r = tag_polarity_variance(in);
        py::dict out;
        for (const auto& [tag, tv] : r.per_tag) out[py::str(tag)] = py::make_tuple(tv.variance, tv.count, r.share(tag));
        return out;
      },
      py::arg("items"), "tag -> (variance, count, share)");

  // axis
  py::class_<SentimentAxis>(m, "SentimentAxis")
      .def_readonly("pos_words", &SentimentAxis::pos_words)
      .def_readonly("neg_words", &SentimentAxis::neg_words)
      .def_readonly("vec_pos", &SentimentAxis::vec_pos)
      .def_readonly("vec_neg", &SentimentAxis::vec_neg)
      .def_readonly("seed", &SentimentAxis::seed)
      .def("swapped", &SentimentAxis::swapped)
      .def("orientation", [](const SentimentAxis& a, const EmbeddingTable& t, const std::string& w) {
        return sentiment_orientation(w, a, t);
      });

  m.def(
      "induce_axis",
      [](const PointWordSet& points, const EmbeddingTable& table, const std::string& mode,
         const PolarityLexicon* lexicon, const std::string& seed) {
        auto induced = induce_axis(points, table, mode_of(mode), lexicon, seed);
        py::dict out;
        out["axis"] = induced.axis;
        out["dropped"] = induced.dropped;
        if (induced.projection) {
          out["words"] = induced.projection->words;
          out["pc1"] = induced.projection->pc1;
          out["pc2"] = induced.projection->pc2;
          out["explained_variance"] = induced.projection->explained_variance;
        }
        return out;
      },
      py::arg("points"), py::arg("table"), py::arg("mode") = "unsup", py::arg("lexicon") = nullptr,
      py::arg("seed") = "excellent");

  py::class_<OrientationLexicon>(m, "OrientationLexicon")
      .def_readonly("scores", &OrientationLexicon::scores)
      .def_readonly("axis", &OrientationLexicon::axis)
      .def("score", &OrientationLexicon::score)
      .def("__len__", &OrientationLexicon::size);
  m.def("score_vocabulary", &score_vocabulary, py::arg("axis"), py::arg("table"));

  // evaluation
  m.def(
      "classify_review",
      [](const TaggedDocument& d, const OrientationLexicon& lex) {
        auto r = classify_review(d, lex);
        return py::make_tuple(std::string(to_string(r.label)), r.mean_so, r.undecided);
      },
      py::arg("review"), py::arg("lexicon"), "-> (label, mean SO, undecided)");
  m.def(
      "evaluate", [](const TaggedCorpus& reviews, const OrientationLexicon& lex) {
        return report_dict(evaluate(reviews, lex));
      },
      py::arg("reviews"), py::arg("lexicon"));

  // PMI-IR
  py::class_<NearIndex>(m, "NearIndex")
      .def(py::init([](const TaggedCorpus& c, int window, const std::string& counting) {
             return NearIndex(c, window, counting == "token" ? HitCounting::Token : HitCounting::Document);
           }),
           py::arg("corpus"), py::arg("window") = 10, py::arg("counting") = "document")
      .def("hits", &NearIndex::hits)
      .def("near_hits", &NearIndex::near_hits)
      .def_property_readonly("window", &NearIndex::window);
  m.def(
      "semantic_orientation",
      [](std::uint64_t near_pos, std::uint64_t near_neg, std::uint64_t pos_seed, std::uint64_t neg_seed) {
        return semantic_orientation({near_pos, near_neg, pos_seed, neg_seed});
      },
      py::arg("near_pos"), py::arg("near_neg"), py::arg("pos_seed_hits"), py::arg("neg_seed_hits"));
  m.def(
      "so_phrase",
      [](const NearIndex& idx, const std::string& w1, const std::string& w2, const std::string& pos,
         const std::string& neg) { return so_phrase(idx, {w1, w2}, pos, neg).so; },
      py::arg("index"), py::arg("w1"), py::arg("w2"), py::arg("pos_seed") = "excellent", py::arg("neg_seed") = "poor");
  m.def(
      "evaluate_pmi",
      [](const TaggedCorpus& reviews, const NearIndex& idx, const std::string& pos, const std::string& neg) {
        return report_dict(evaluate_pmi(reviews, idx, builtin_rules(), pos, neg));
      },
      py::arg("reviews"), py::arg("index"), py::arg("pos_seed") = "excellent", py::arg("neg_seed") = "poor");

  m.def(
      "run_pipeline",
      [](const std::filesystem::path& corpus, const std::filesystem::path& reviews, const std::filesystem::path& out,
         const std::string& mode, std::uint64_t cutoff, std::optional<std::filesystem::path> lexicon,
         std::optional<std::filesystem::path> embeddings, std::optional<SgnsConfig> sgns, const std::string& seed) {
        PipelineConfig cfg;
        cfg.corpus = corpus;
        cfg.reviews = reviews;
        cfg.out_dir = out;
        cfg.mode = mode_of(mode);
        cfg.cutoff = cutoff;
        if (lexicon) cfg.lexicon = *lexicon;
        if (embeddings) cfg.embeddings = *embeddings;
        if (sgns) cfg.sgns = *sgns;
        cfg.seed_word = seed;
        py::gil_scoped_release release;
        auto r = run_pipeline(cfg);
        py::gil_scoped_acquire acquire;
        return report_dict(r);
      },
      py::arg("corpus"), py::arg("reviews"), py::arg("out_dir"), py::arg("mode") = "unsup", py::arg("cutoff") = 5,
      py::arg("lexicon") = py::none(), py::arg("embeddings") = py::none(), py::arg("sgns") = py::none(),
      py::arg("seed") = "excellent");
}
