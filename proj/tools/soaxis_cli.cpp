// soaxis command-line front end. Each subcommand wraps one stage of the
// lexicon-induction pipeline; `run` chains them end to end.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "soaxis/soaxis.hpp"

namespace fs = std::filesystem;
using namespace soaxis;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << text;
}

TaggedCorpus load_corpus(const fs::path& path, const std::string& format) {
  if (format == "auto") return load_corpus_auto(path);
  auto f = parse_corpus_format(format);
  if (!f) throw Error(ErrorKind::Config, "unknown corpus format '" + format + "'");
  return load_tagged_corpus(path, *f);
}

std::vector<std::uint64_t> parse_cutoff_range(const std::string& spec) {
  std::vector<std::uint64_t> out;
  auto dots = spec.find("..");
  try {
    if (dots == std::string::npos) {
      out.push_back(std::stoull(spec));
    } else {
      const auto lo = std::stoull(spec.substr(0, dots));
      const auto hi = std::stoull(spec.substr(dots + 2));
      for (auto c = lo; c <= hi; ++c) out.push_back(c);
    }
  } catch (const std::exception&) {
    throw Error(ErrorKind::Config, "cutoff range must look like A..B, got '" + spec + "'");
  }
  if (out.empty() || out.front() == 0) throw Error(ErrorKind::Config, "cutoffs must be >= 1");
  return out;
}

std::pair<std::string, std::string> parse_seeds(const std::string& spec) {
  auto comma = spec.find(',');
  if (comma == std::string::npos || comma == 0 || comma + 1 == spec.size())
    throw Error(ErrorKind::Config, "--seeds expects 'positive,negative'");
  return {spec.substr(0, comma), spec.substr(comma + 1)};
}

AxisMode parse_mode(const std::string& m) {
  if (m == "unsup" || m == "unsupervised") return AxisMode::Unsupervised;
  if (m == "semi" || m == "semi-supervised") return AxisMode::SemiSupervised;
  throw Error(ErrorKind::Config, "mode must be unsup or semi");
}

void add_sgns_options(CLI::App* cmd, SgnsConfig& cfg) {
  cmd->add_option("--dim", cfg.dim, "vector dimension")->capture_default_str();
  cmd->add_option("--window", cfg.window, "context radius")->capture_default_str();
  cmd->add_option("--negatives", cfg.negatives, "negative samples per context")->capture_default_str();
  cmd->add_option("--epochs", cfg.epochs, "passes over the corpus")->capture_default_str();
  cmd->add_option("--min-count", cfg.min_count, "minimum word count")->capture_default_str();
  cmd->add_option("--lr", cfg.initial_learning_rate, "initial learning rate")->capture_default_str();
  cmd->add_option("--subsample", cfg.subsample_threshold, "subsampling threshold")->capture_default_str();
  cmd->add_option("--seed", cfg.rng_seed, "random seed")->capture_default_str();
  cmd->add_option("--threads", cfg.threads, "worker threads (1 = deterministic)")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sentiment orientation lexicons from word-embedding axes"};
  app.require_subcommand(1);
  std::string format = "auto";
  app.add_option("--format", format, "corpus format: auto, a (token per line) or b (inline word_TAG)")
      ->capture_default_str();

  // train-embeddings
  SgnsConfig sgns;
  fs::path corpus_path, out_path;
  auto* train = app.add_subcommand("train-embeddings", "train skip-gram vectors on a tagged corpus");
  train->add_option("--corpus", corpus_path)->required();
  train->add_option("--out", out_path)->required();
  add_sgns_options(train, sgns);

  // neighbors
  fs::path emb_path;
  std::string query;
  std::size_t k = 10;
  auto* neighbors = app.add_subcommand("neighbors", "nearest neighbours of a word");
  neighbors->add_option("--embeddings", emb_path)->required();
  neighbors->add_option("--word", query)->required();
  neighbors->add_option("-k", k)->capture_default_str();

  // extract-phrases
  auto* extract = app.add_subcommand("extract-phrases", "extract two-word phrases with the POS pattern rules");
  extract->add_option("--corpus", corpus_path)->required();
  extract->add_option("--out", out_path)->required();

  // select-points
  fs::path phrases_path;
  std::uint64_t cutoff = 5;
  bool no_jjr = false;
  auto* select = app.add_subcommand("select-points", "select point words by phrase frequency cutoff");
  select->add_option("--phrases", phrases_path)->required();
  select->add_option("--corpus", corpus_path, "corpus the phrases were extracted from")->required();
  select->add_option("--cutoff", cutoff)->capture_default_str();
  select->add_flag("--no-jjr", no_jjr, "do not count JJR as a modifier");
  select->add_option("--out", out_path)->required();

  // build-axis
  fs::path points_path, lexicon_path, gold_path, out_dir;
  std::string mode = "unsup";
  std::string seed_word = "excellent";
  double neutral = 0.0;
  auto* build = app.add_subcommand("build-axis", "induce the sentiment axis from point words");
  build->add_option("--embeddings", emb_path)->required();
  build->add_option("--points", points_path)->required();
  build->add_option("--mode", mode, "unsup or semi")->capture_default_str();
  build->add_option("--lexicon", lexicon_path, "polarity lexicon (semi mode)");
  build->add_option("--neutral-threshold", neutral)->capture_default_str();
  build->add_option("--gold", gold_path, "gold word scores for a pc1 correlation check");
  build->add_option("--seed-word", seed_word)->capture_default_str();
  build->add_option("--out", out_dir)->required();

  // score
  fs::path axis_path;
  auto* score = app.add_subcommand("score", "score every vocabulary word against an axis");
  score->add_option("--axis", axis_path, "axis directory or axis.tsv")->required();
  score->add_option("--embeddings", emb_path)->required();
  score->add_option("--out", out_path)->required();

  // classify
  fs::path reviews_path, report_path;
  auto* classify = app.add_subcommand("classify", "classify labeled reviews with an orientation lexicon");
  classify->add_option("--lexicon", lexicon_path)->required();
  classify->add_option("--reviews", reviews_path)->required();
  classify->add_option("--report", report_path)->required();

  // sweep
  std::string cutoffs = "1..10";
  std::string seeds = "excellent,poor";
  int window = 10;
  fs::path csv_path;
  auto* sweep = app.add_subcommand("sweep", "accuracy across point-word cutoffs");
  sweep->add_option("--corpus", corpus_path)->required();
  sweep->add_option("--reviews", reviews_path)->required();
  sweep->add_option("--cutoffs", cutoffs, "A..B")->capture_default_str();
  sweep->add_option("--mode", mode, "unsup, semi or pmi")->capture_default_str();
  sweep->add_option("--embeddings", emb_path, "vectors to load (trained on --corpus when omitted)");
  sweep->add_option("--lexicon", lexicon_path);
  sweep->add_option("--neutral-threshold", neutral)->capture_default_str();
  sweep->add_option("--seed-word", seed_word)->capture_default_str();
  sweep->add_option("--near-window", window, "NEAR window for pmi mode")->capture_default_str();
  sweep->add_option("--seeds", seeds)->capture_default_str();
  sweep->add_option("--csv", csv_path)->required();
  SgnsConfig sweep_sgns;
  add_sgns_options(sweep, sweep_sgns);

  // pmi-baseline
  std::string counting = "document";
  fs::path dump_path;
  auto* pmi = app.add_subcommand("pmi-baseline", "PMI-IR review classification over a local NEAR index");
  pmi->add_option("--corpus", corpus_path, "corpus to index")->required();
  pmi->add_option("--reviews", reviews_path)->required();
  pmi->add_option("--window", window)->capture_default_str();
  pmi->add_option("--seeds", seeds)->capture_default_str();
  pmi->add_option("--counting", counting, "document or token")->capture_default_str();
  pmi->add_option("--dump-index", dump_path, "write the hit index used for the reviews");
  pmi->add_option("--report", report_path)->required();

  // tag-variance
  fs::path annotated_path;
  auto* tagvar = app.add_subcommand("tag-variance", "variance of polarity values per POS tag");
  tagvar->add_option("--annotated", annotated_path)->required();
  tagvar->add_option("--out", out_path)->required();

  // run
  PipelineConfig pipe;
  auto* run = app.add_subcommand("run", "full pipeline: embeddings, points, axis, lexicon, evaluation");
  run->add_option("--corpus", pipe.corpus)->required();
  run->add_option("--reviews", pipe.reviews)->required();
  run->add_option("--embeddings", pipe.embeddings, "vectors to load (trained on --corpus when omitted)");
  run->add_option("--mode", mode)->capture_default_str();
  run->add_option("--lexicon", pipe.lexicon);
  run->add_option("--neutral-threshold", pipe.neutral_threshold)->capture_default_str();
  run->add_option("--cutoff", pipe.cutoff)->capture_default_str();
  run->add_option("--seed-word", pipe.seed_word)->capture_default_str();
  run->add_flag("--save-embeddings", pipe.save_trained_embeddings);
  run->add_option("--out", pipe.out_dir)->required();
  add_sgns_options(run, pipe.sgns);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train) {
      const auto corpus = load_corpus(corpus_path, format);
      const auto table = train_sgns(corpus, sgns);
      save_embeddings(table, out_path);
      std::cout << "vocabulary " << table.size() << " x " << table.dim() << ", corpus tokens "
                << table.metadata.at("corpus_tokens") << "\n";
    } else if (*neighbors) {
      const auto table = load_embeddings(emb_path);
      for (const auto& [w, s] : nearest_neighbors(table, query, k)) std::cout << w << "\t" << s << "\n";
    } else if (*extract) {
      const auto phrases = extract_phrases(load_corpus(corpus_path, format), builtin_rules());
      write_file(out_path, format_phrases(phrases));
      std::cout << phrases.size() << " phrases\n";
    } else if (*select) {
      const auto corpus = load_corpus(corpus_path, format);
      const auto phrases = parse_phrases(read_text_file(phrases_path));
      const auto points = select_point_words(phrases, corpus, cutoff, !no_jjr);
      write_file(out_path, format_point_words(points));
      std::cout << points.size() << " point words from " << points.phrase_counts.size() << " phrase types\n";
    } else if (*build) {
      const auto table = load_embeddings(emb_path);
      const auto points = parse_point_words(read_text_file(points_path));
      std::optional<PolarityLexicon> lex;
      if (!lexicon_path.empty()) {
        lex = load_polarity_lexicon(lexicon_path);
        lex->neutral_threshold = neutral;
      }
      const auto induced = induce_axis(points, table, parse_mode(mode), lex ? &*lex : nullptr, seed_word);
      fs::create_directories(out_dir);
      write_file(out_dir / "axis.tsv", format_axis(induced.axis));
      if (induced.projection) {
        write_file(out_dir / "projection.csv", format_projection_csv(*induced.projection));
        std::cout << "explained variance pc1 " << induced.projection->explained_variance.first << ", pc2 "
                  << induced.projection->explained_variance.second << "\n";
        if (!gold_path.empty())
          std::cout << "|r| with gold " << correlate_with_gold(*induced.projection, load_polarity_lexicon(gold_path))
                    << "\n";
      }
      std::cout << induced.axis.pos_words.size() << " positive, " << induced.axis.neg_words.size() << " negative, "
                << induced.dropped.size() << " dropped point words\n";
    } else if (*score) {
      const auto table = load_embeddings(emb_path);
      const auto axis_file = fs::is_directory(axis_path) ? axis_path / "axis.tsv" : axis_path;
      const auto axis = parse_axis(read_text_file(axis_file));
      const auto lex = score_vocabulary(axis, table);
      write_file(out_path, format_orientation_lexicon(lex));
      std::cout << lex.size() << " words scored\n";
    } else if (*classify) {
      const auto lex = parse_orientation_lexicon(read_text_file(lexicon_path));
      const auto reviews = labeled_only(load_corpus(reviews_path, format));
      const auto report = evaluate(reviews, lex);
      write_file(report_path, format_report(report));
      std::cout << format_report(report);
    } else if (*sweep) {
      const auto corpus = load_corpus(corpus_path, format);
      const auto reviews = labeled_only(load_corpus(reviews_path, format));
      const auto smode = parse_sweep_mode(mode);
      if (!smode) throw Error(ErrorKind::Config, "mode must be unsup, semi or pmi");
      SweepInputs in;
      in.phrase_corpus = &corpus;
      in.reviews = &reviews;
      in.seed = seed_word;
      std::tie(in.pos_seed, in.neg_seed) = parse_seeds(seeds);
      std::optional<EmbeddingTable> table;
      std::optional<PolarityLexicon> lex;
      std::optional<NearIndex> index;
      if (*smode != SweepMode::Pmi) {
        table = emb_path.empty() ? train_sgns(corpus, sweep_sgns) : load_embeddings(emb_path);
        in.table = &*table;
      }
      if (*smode == SweepMode::Semi) {
        if (lexicon_path.empty()) throw Error(ErrorKind::Config, "semi mode requires --lexicon");
        lex = load_polarity_lexicon(lexicon_path);
        lex->neutral_threshold = neutral;
        in.lexicon = &*lex;
      }
      if (*smode == SweepMode::Pmi) {
        index.emplace(corpus, window);
        in.index = &*index;
      }
      const auto rows = sweep_cutoffs(in, *smode, parse_cutoff_range(cutoffs));
      write_file(csv_path, format_sweep_csv(rows));
      std::cout << format_sweep_csv(rows);
    } else if (*pmi) {
      const auto [pos_seed, neg_seed] = parse_seeds(seeds);
      if (counting != "document" && counting != "token")
        throw Error(ErrorKind::Config, "--counting must be document or token");
      const auto corpus = load_corpus(corpus_path, format);
      const auto reviews = labeled_only(load_corpus(reviews_path, format));
      const NearIndex index(corpus, window, counting == "document" ? HitCounting::Document : HitCounting::Token);
      const auto report = evaluate_pmi(reviews, index, builtin_rules(), pos_seed, neg_seed);
      write_file(report_path, format_report(report));
      if (!dump_path.empty()) {
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& p : extract_phrases(reviews, builtin_rules()))
          for (const auto& s : {pos_seed, neg_seed}) pairs.emplace_back(p.w1 + " " + p.w2, s);
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        write_file(dump_path, format_near_index(index, pairs));
      }
      std::cout << format_report(report);
    } else if (*tagvar) {
      const auto report = tag_polarity_variance(parse_annotated(read_text_file(annotated_path)));
      write_file(out_path, format_tag_variance(report));
      std::cout << format_tag_variance(report);
    } else if (*run) {
      pipe.mode = parse_mode(mode);
      const auto report = run_pipeline(pipe);
      std::cout << format_report(report);
    }
  } catch (const Error& e) {
    std::cerr << "soaxis: " << e.what() << "\n";
    return e.kind() == ErrorKind::Config || e.kind() == ErrorKind::Parse ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "soaxis: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
