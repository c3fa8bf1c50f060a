#include "soaxis/eval.hpp"

#include <algorithm>

#include "soaxis/error.hpp"
#include "text_util.hpp"

namespace soaxis {

ReviewDecision classify_review(const TaggedDocument& review, const OrientationLexicon& lex) {
  if (lex.scores.empty()) throw Error(ErrorKind::InvalidArgument, "orientation lexicon is empty");
  ReviewDecision d;
  double sum = 0;
  for (const auto& t : review.tokens)
    if (auto s = lex.score(t.text)) {
      sum += *s;
      ++d.scored_tokens;
    }
  if (d.scored_tokens == 0) {
    d.undecided = true;
    return d;
  }
  d.mean_so = sum / static_cast<double>(d.scored_tokens);
  d.label = d.mean_so < 0 ? Polarity::Neg : Polarity::Pos;
  return d;
}

EvalReport tally(const std::vector<Prediction>& predictions) {
  if (predictions.empty()) throw Error(ErrorKind::EmptyInput, "no reviews to evaluate");
  EvalReport r;
  for (const auto& p : predictions) {
    ++r.n_total;
    (p.gold == Polarity::Pos ? r.n_pos_gold : r.n_neg_gold) += 1;
    if (p.gold == p.predicted) ++r.n_correct;
    if (p.undecided) ++r.n_undecided;
    ++r.confusion[p.gold == Polarity::Pos ? 0 : 1][p.predicted == Polarity::Pos ? 0 : 1];
  }
  r.accuracy = static_cast<double>(r.n_correct) / static_cast<double>(r.n_total);
  return r;
}

namespace {

Polarity gold_of(const TaggedDocument& d) {
  if (!d.label) throw Error(ErrorKind::InvalidArgument, "review '" + d.id + "' has no gold label");
  return *d.label;
}

}  // namespace

EvalReport evaluate(const TaggedCorpus& reviews, const OrientationLexicon& lex) {
  std::vector<Prediction> preds;
  for (const auto& d : reviews.documents) {
    const auto decision = classify_review(d, lex);
    preds.push_back({gold_of(d), decision.label, decision.undecided});
  }
  return tally(preds);
}

EvalReport evaluate_pmi(const TaggedCorpus& reviews, const NearIndex& index, const std::vector<PatternRule>& rules,
                        const std::string& pos_seed, const std::string& neg_seed) {
  std::vector<Prediction> preds;
  for (const auto& d : reviews.documents) {
    const auto decision = classify_review_pmi(index, d, rules, pos_seed, neg_seed);
    preds.push_back({gold_of(d), decision.label, decision.no_phrase});
  }
  auto report = tally(preds);
  report.config_snapshot["method"] = "pmi-ir";
  report.config_snapshot["window"] = std::to_string(index.window());
  report.config_snapshot["counting"] = index.counting() == HitCounting::Document ? "document" : "token";
  report.config_snapshot["seeds"] = pos_seed + "," + neg_seed;
  report.config_snapshot["index_corpus"] = index.corpus_fingerprint();
  return report;
}

std::string format_report(const EvalReport& r) {
  std::string out;
  out += "accuracy=" + detail::format_fixed(r.accuracy, 6) + "\n";
  out += "n_total=" + std::to_string(r.n_total) + "\n";
  out += "n_correct=" + std::to_string(r.n_correct) + "\n";
  out += "n_pos_gold=" + std::to_string(r.n_pos_gold) + "\n";
  out += "n_neg_gold=" + std::to_string(r.n_neg_gold) + "\n";
  out += "n_undecided=" + std::to_string(r.n_undecided) + "\n";
  out += "# confusion rows: gold, columns: predicted POS NEG\n";
  out += "confusion.POS=" + std::to_string(r.confusion[0][0]) + " " + std::to_string(r.confusion[0][1]) + "\n";
  out += "confusion.NEG=" + std::to_string(r.confusion[1][0]) + " " + std::to_string(r.confusion[1][1]) + "\n";
  for (const auto& [k, v] : r.config_snapshot) out += "config." + k + "=" + v + "\n";
  return out;
}

InducedAxis induce_axis(const PointWordSet& points, const EmbeddingTable& table, AxisMode mode,
                        const PolarityLexicon* lexicon, const std::string& seed) {
  InducedAxis out;
  Partition part;
  if (mode == AxisMode::Unsupervised) {
    const auto dm = build_distance_matrix(points, table);
    out.projection = principal_axis(dm);
    part = partition_by_origin(*out.projection);
    out.dropped = dm.dropped;
  } else {
    if (!lexicon) throw Error(ErrorKind::Config, "semi-supervised mode needs a polarity lexicon");
    // Words without a vector cannot contribute to a reference vector either.
    PointWordSet in_vocab = points;
    in_vocab.words.clear();
    for (const auto& w : points.words) {
      if (table.contains(w)) in_vocab.words.insert(w);
      else out.dropped.push_back(w);
    }
    part = partition_by_lexicon(in_vocab, *lexicon);
    out.dropped.insert(out.dropped.end(), part.dropped.begin(), part.dropped.end());
    std::sort(out.dropped.begin(), out.dropped.end());
  }
  const auto [va, vb] = build_reference_vectors(part.a, part.b, table);
  out.axis = orient_by_seed(va, vb, table, seed, part.a, part.b);
  out.axis.mode = mode;
  return out;
}

std::string_view to_string(SweepMode m) {
  switch (m) {
    case SweepMode::Unsup: return "UNSUP";
    case SweepMode::Semi: return "SEMI";
    case SweepMode::Pmi: return "PMI";
  }
  return "?";
}

std::optional<SweepMode> parse_sweep_mode(std::string_view s) {
  if (s == "unsup" || s == "UNSUP" || s == "unsupervised") return SweepMode::Unsup;
  if (s == "semi" || s == "SEMI" || s == "semi-supervised") return SweepMode::Semi;
  if (s == "pmi" || s == "PMI" || s == "pmi-ir") return SweepMode::Pmi;
  return std::nullopt;
}

namespace {

std::string reason_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::EmptySelection: return "no_point_words";
    case ErrorKind::InsufficientData: return "insufficient_point_words";
    case ErrorKind::Partition: return "partition_failed";
    case ErrorKind::Degenerate: return "degenerate_axis";
    case ErrorKind::Numerical: return "no_convergence";
    case ErrorKind::OrientationAmbiguous: return "orientation_ambiguous";
    case ErrorKind::SeedMissing: return "seed_missing";
    default: return "error";
  }
}

}  // namespace

std::vector<SweepRow> sweep_cutoffs(const SweepInputs& in, SweepMode mode, const std::vector<std::uint64_t>& cutoffs) {
  if (!in.phrase_corpus || !in.reviews) throw Error(ErrorKind::Config, "sweep needs a phrase corpus and reviews");
  if (mode != SweepMode::Pmi && !in.table) throw Error(ErrorKind::Config, "sweep needs embeddings");
  if (mode == SweepMode::Semi && !in.lexicon) throw Error(ErrorKind::Config, "semi-supervised sweep needs a lexicon");
  if (mode == SweepMode::Pmi && !in.index) throw Error(ErrorKind::Config, "PMI sweep needs a NEAR index");

  const auto phrases = extract_phrases(*in.phrase_corpus, builtin_rules());
  // PMI-IR does not depend on the cutoff; evaluate it once.
  std::optional<double> pmi_accuracy;
  std::string pmi_reason;
  if (mode == SweepMode::Pmi) {
    try {
      pmi_accuracy = evaluate_pmi(*in.reviews, *in.index, builtin_rules(), in.pos_seed, in.neg_seed).accuracy;
    } catch (const Error& e) {
      pmi_reason = reason_code(e.kind());
    }
  }

  std::vector<SweepRow> rows;
  for (auto cutoff : cutoffs) {
    SweepRow row;
    row.cutoff = cutoff;
    row.mode = mode;
    try {
      const auto points = select_point_words(phrases, *in.phrase_corpus, cutoff);
      row.k_point_words = points.size();
      if (mode == SweepMode::Pmi) {
        row.accuracy = pmi_accuracy;
        row.reason = pmi_reason;
      } else {
        const auto induced = induce_axis(points, *in.table,
                                         mode == SweepMode::Unsup ? AxisMode::Unsupervised : AxisMode::SemiSupervised,
                                         in.lexicon, in.seed);
        row.accuracy = evaluate(*in.reviews, score_vocabulary(induced.axis, *in.table)).accuracy;
      }
    } catch (const Error& e) {
      row.accuracy.reset();
      row.reason = reason_code(e.kind());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "cutoff,k,mode,accuracy,reason\n";
  for (const auto& r : rows)
    out += std::to_string(r.cutoff) + "," + std::to_string(r.k_point_words) + "," + std::string(to_string(r.mode)) +
           "," + (r.accuracy ? detail::format_fixed(*r.accuracy, 6) : std::string()) + "," + r.reason + "\n";
  return out;
}

TaggedCorpus load_corpus_auto(const std::filesystem::path& path) {
  return load_tagged_corpus(path, detect_corpus_format(path));
}

namespace {

template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (!e.stage().empty()) throw;
    throw e.with_stage(name);
  }
}

}  // namespace

EvalReport run_pipeline(const PipelineConfig& cfg) {
  if (cfg.mode == AxisMode::SemiSupervised && cfg.lexicon.empty())
    throw Error(ErrorKind::Config, "semi-supervised mode requires a lexicon path", "config");
  if (cfg.out_dir.empty()) throw Error(ErrorKind::Config, "no output directory given", "config");
  if (cfg.cutoff < 1) throw Error(ErrorKind::Config, "cutoff must be at least 1", "config");

  const auto corpus = stage("load-corpus", [&] { return load_corpus_auto(cfg.corpus); });
  const auto reviews = stage("load-reviews", [&] { return labeled_only(load_corpus_auto(cfg.reviews)); });
  std::optional<PolarityLexicon> lexicon;
  if (cfg.mode == AxisMode::SemiSupervised) {
    lexicon = stage("load-lexicon", [&] { return load_polarity_lexicon(cfg.lexicon); });
    lexicon->neutral_threshold = cfg.neutral_threshold;
  }

  std::filesystem::create_directories(cfg.out_dir);
  const bool trained = cfg.embeddings.empty();
  const auto table = stage("embeddings", [&] {
    return trained ? train_sgns(corpus, cfg.sgns) : load_embeddings(cfg.embeddings);
  });
  if (trained && cfg.save_trained_embeddings) save_embeddings(table, cfg.out_dir / "embeddings.txt");

  const auto points = stage("select-points", [&] {
    return select_point_words(extract_phrases(corpus, builtin_rules()), corpus, cfg.cutoff);
  });
  detail::write_text_file(cfg.out_dir / "points.tsv", format_point_words(points));

  const auto induced = stage("build-axis", [&] {
    return induce_axis(points, table, cfg.mode, lexicon ? &*lexicon : nullptr, cfg.seed_word);
  });
  detail::write_text_file(cfg.out_dir / "axis.tsv", format_axis(induced.axis));
  if (induced.projection)
    detail::write_text_file(cfg.out_dir / "projection.csv", format_projection_csv(*induced.projection));

  const auto lex = stage("score", [&] { return score_vocabulary(induced.axis, table); });
  detail::write_text_file(cfg.out_dir / "lexicon.tsv", format_orientation_lexicon(lex));

  auto report = stage("evaluate", [&] { return evaluate(reviews, lex); });
  auto& snap = report.config_snapshot;
  snap["method"] = "vector-axis";
  snap["mode"] = std::string(to_string(cfg.mode));
  snap["cutoff"] = std::to_string(cfg.cutoff);
  snap["seed_word"] = cfg.seed_word;
  snap["embedding"] = trained ? "trained" : "loaded";
  snap["embedding_fingerprint"] = table.fingerprint();
  snap["k_point_words"] = std::to_string(points.size());
  snap["pos_words"] = std::to_string(induced.axis.pos_words.size());
  snap["neg_words"] = std::to_string(induced.axis.neg_words.size());
  snap["dropped_point_words"] = std::to_string(induced.dropped.size());
  snap["seed_so"] = detail::format_fixed(lex.scores.at(cfg.seed_word), 6);
  if (cfg.mode == AxisMode::SemiSupervised) snap["neutral_threshold"] = detail::format_double(cfg.neutral_threshold);
  if (induced.projection) {
    snap["explained_variance_pc1"] = detail::format_fixed(induced.projection->explained_variance.first, 6);
    snap["explained_variance_pc2"] = detail::format_fixed(induced.projection->explained_variance.second, 6);
  }
  if (trained)
    for (const auto& [k, v] : table.metadata) snap["sgns." + k] = v;
  detail::write_text_file(cfg.out_dir / "report.txt", format_report(report));
  return report;
}

}  // namespace soaxis
