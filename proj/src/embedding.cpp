#include "soaxis/embedding.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "soaxis/error.hpp"
#include "text_util.hpp"

namespace soaxis {

EmbeddingTable::EmbeddingTable(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw Error(ErrorKind::InvalidArgument, "embedding dimension must be positive");
}

void EmbeddingTable::add(std::string word, std::span<const double> vec) {
  if (word.empty()) throw Error(ErrorKind::InvalidArgument, "empty word");
  if (vec.size() != dim_)
    throw Error(ErrorKind::InvalidArgument, "vector for '" + word + "' has length " + std::to_string(vec.size()) +
                                                ", expected " + std::to_string(dim_));
  for (double v : vec)
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "non-finite component for '" + word + "'");
  auto [it, inserted] = index_.emplace(word, words_.size());
  if (!inserted) throw Error(ErrorKind::InvalidArgument, "duplicate word '" + word + "'");
  words_.push_back(std::move(word));
  data_.insert(data_.end(), vec.begin(), vec.end());
}

std::optional<std::size_t> EmbeddingTable::index_of(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const double> EmbeddingTable::row(std::size_t i) const {
  return std::span<const double>(data_).subspan(i * dim_, dim_);
}

std::span<const double> EmbeddingTable::vector(std::string_view word) const {
  auto i = index_of(word);
  if (!i) throw Error(ErrorKind::OutOfVocabulary, "'" + std::string(word) + "' is not in the embedding vocabulary");
  return row(*i);
}

std::string EmbeddingTable::fingerprint() const {
  detail::Fnv1a h;
  h.update(std::to_string(dim_));
  for (std::size_t i = 0; i < words_.size(); ++i) {
    h.update(words_[i]);
    h.update(std::string_view("\0", 1));
    for (double v : row(i)) h.update(v);
  }
  return h.hex();
}

EmbeddingTable EmbeddingTable::scaled(double factor) const {
  EmbeddingTable out(dim_);
  std::vector<double> buf(dim_);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    auto r = row(i);
    std::transform(r.begin(), r.end(), buf.begin(), [&](double v) { return v * factor; });
    out.add(words_[i], buf);
  }
  out.metadata = metadata;
  return out;
}

void SgnsConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::Config, what); };
  if (dim <= 0) fail("dim must be positive");
  if (window <= 0) fail("window must be positive");
  if (negatives <= 0) fail("negatives must be positive");
  if (epochs <= 0) fail("epochs must be positive");
  if (min_count <= 0) fail("min_count must be positive");
  if (threads <= 0) fail("threads must be positive");
  if (!(initial_learning_rate > 0.0 && initial_learning_rate < 1.0)) fail("learning rate must lie in (0, 1)");
  if (!(subsample_threshold >= 0.0)) fail("subsample threshold must be non-negative");
}

namespace sgns {

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// log σ(x), stable for large |x|
double log_sigmoid(double x) { return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x)); }

}  // namespace

double loss(std::span<const double> center, std::span<const double> context,
            std::span<const std::span<const double>> negatives) {
  double l = -log_sigmoid(dot(context, center));
  for (auto n : negatives) l -= log_sigmoid(-dot(n, center));
  return l;
}

Gradient gradient(std::span<const double> center, std::span<const double> context,
                  std::span<const std::span<const double>> negatives) {
  const std::size_t dim = center.size();
  Gradient g;
  g.center.assign(dim, 0.0);
  const double gp = sigmoid(dot(context, center)) - 1.0;
  g.context.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    g.center[i] += gp * context[i];
    g.context[i] = gp * center[i];
  }
  for (auto n : negatives) {
    const double gn = sigmoid(dot(n, center));
    std::vector<double> gneg(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      g.center[i] += gn * n[i];
      gneg[i] = gn * center[i];
    }
    g.negatives.push_back(std::move(gneg));
  }
  return g;
}

void step(std::span<double> center, std::span<double> context, std::span<const std::span<double>> negatives,
          double lr, std::span<double> scratch) {
  const std::size_t dim = center.size();
  std::fill(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(dim), 0.0);
  // Output rows are updated against the pre-step center; the center
  // accumulates against pre-step output rows and is applied last.
  auto apply = [&](std::span<double> out, double label) {
    const double g = lr * (label - sigmoid(dot(out, center)));
    for (std::size_t i = 0; i < dim; ++i) scratch[i] += g * out[i];
    for (std::size_t i = 0; i < dim; ++i) out[i] += g * center[i];
  };
  apply(context, 1.0);
  for (auto n : negatives) apply(n, 0.0);
  for (std::size_t i = 0; i < dim; ++i) center[i] += scratch[i];
}

}  // namespace sgns

namespace {

// Linear congruential generator used by the reference word2vec trainer;
// fully specified, so runs are reproducible across platforms.
class Lcg {
 public:
  explicit Lcg(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ = state_ * 25214903917ULL + 11ULL;
    return state_;
  }

 private:
  std::uint64_t state_;
};

struct Vocab {
  std::vector<std::string> words;
  std::vector<std::uint64_t> counts;
  std::unordered_map<std::string, std::uint32_t> index;
  std::uint64_t train_words = 0;
};

Vocab build_vocab(const TaggedCorpus& corpus, int min_count) {
  const FreqTable freq = count_frequencies(corpus);
  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (const auto& [w, c] : freq.counts)
    if (c >= static_cast<std::uint64_t>(min_count)) kept.emplace_back(w, c);
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  Vocab v;
  for (auto& [w, c] : kept) {
    v.index.emplace(w, static_cast<std::uint32_t>(v.words.size()));
    v.words.push_back(w);
    v.counts.push_back(c);
    v.train_words += c;
  }
  return v;
}

std::vector<std::uint32_t> build_negative_table(const Vocab& vocab) {
  constexpr std::size_t kTableSize = 1u << 22;
  std::vector<std::uint32_t> table(kTableSize);
  double norm = 0;
  for (auto c : vocab.counts) norm += std::pow(static_cast<double>(c), 0.75);
  std::size_t w = 0;
  double cum = std::pow(static_cast<double>(vocab.counts[0]), 0.75) / norm;
  for (std::size_t i = 0; i < kTableSize; ++i) {
    table[i] = static_cast<std::uint32_t>(w);
    if (static_cast<double>(i) / kTableSize > cum && w + 1 < vocab.counts.size()) {
      ++w;
      cum += std::pow(static_cast<double>(vocab.counts[w]), 0.75) / norm;
    }
  }
  return table;
}

struct Trainer {
  const SgnsConfig& cfg;
  const Vocab& vocab;
  const std::vector<std::vector<std::uint32_t>>& docs;
  const std::vector<std::uint32_t>& neg_table;
  std::vector<double>& in;   // center vectors, the exported embeddings
  std::vector<double>& out;  // context vectors
  std::atomic<std::uint64_t>& processed;
  std::uint64_t total_steps;

  std::span<double> in_row(std::uint32_t w) const {
    return std::span<double>(in).subspan(std::size_t{w} * cfg.dim, cfg.dim);
  }
  std::span<double> out_row(std::uint32_t w) const {
    return std::span<double>(out).subspan(std::size_t{w} * cfg.dim, cfg.dim);
  }

  void run(std::size_t first_doc, std::size_t last_doc, std::uint64_t seed) {
    Lcg rng(seed);
    std::vector<double> scratch(cfg.dim);
    std::vector<std::uint32_t> sentence;
    std::vector<std::span<double>> negs;
    const double sample_total = cfg.subsample_threshold * static_cast<double>(vocab.train_words);
    const double min_lr = cfg.initial_learning_rate * 1e-4;

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
      for (std::size_t d = first_doc; d < last_doc; ++d) {
        sentence.clear();
        for (auto w : docs[d]) {
          if (cfg.subsample_threshold > 0) {
            const double f = static_cast<double>(vocab.counts[w]);
            const double keep = (std::sqrt(f / sample_total) + 1.0) * sample_total / f;
            const double r = static_cast<double>(rng.next() & 0xFFFF) / 65536.0;
            if (keep < r) continue;
          }
          sentence.push_back(w);
        }
        const auto done = processed.fetch_add(docs[d].size(), std::memory_order_relaxed);
        double lr = cfg.initial_learning_rate *
                    (1.0 - static_cast<double>(done) / static_cast<double>(total_steps + 1));
        lr = std::max(lr, min_lr);

        const auto n = static_cast<std::ptrdiff_t>(sentence.size());
        for (std::ptrdiff_t pos = 0; pos < n; ++pos) {
          const auto radius = static_cast<std::ptrdiff_t>(cfg.window - static_cast<int>(rng.next() % cfg.window));
          const auto center = sentence[static_cast<std::size_t>(pos)];
          for (auto c = std::max<std::ptrdiff_t>(0, pos - radius); c <= std::min(n - 1, pos + radius); ++c) {
            if (c == pos) continue;
            const auto context = sentence[static_cast<std::size_t>(c)];
            negs.clear();
            for (int k = 0; k < cfg.negatives; ++k) {
              const auto target = neg_table[(rng.next() >> 16) % neg_table.size()];
              if (target == context) continue;
              negs.push_back(out_row(target));
            }
            sgns::step(in_row(center), out_row(context), negs, lr, scratch);
          }
        }
      }
    }
  }
};

}  // namespace

EmbeddingTable train_sgns(const TaggedCorpus& corpus, const SgnsConfig& config) {
  config.validate();
  if (corpus.documents.empty()) throw Error(ErrorKind::EmptyInput, "training corpus is empty");
  const Vocab vocab = build_vocab(corpus, config.min_count);
  if (vocab.words.empty())
    throw Error(ErrorKind::Config, "no word reaches min_count " + std::to_string(config.min_count));

  std::vector<std::vector<std::uint32_t>> docs;
  docs.reserve(corpus.documents.size());
  for (const auto& d : corpus.documents) {
    std::vector<std::uint32_t> ids;
    for (const auto& t : d.tokens) {
      auto it = vocab.index.find(t.text);
      if (it != vocab.index.end()) ids.push_back(it->second);
    }
    if (!ids.empty()) docs.push_back(std::move(ids));
  }

  const std::size_t dim = static_cast<std::size_t>(config.dim);
  std::vector<double> in(vocab.words.size() * dim);
  std::vector<double> out(vocab.words.size() * dim, 0.0);
  Lcg init(config.rng_seed);
  for (auto& v : in) v = (static_cast<double>(init.next() & 0xFFFF) / 65536.0 - 0.5) / static_cast<double>(dim);

  const auto neg_table = build_negative_table(vocab);
  std::atomic<std::uint64_t> processed{0};
  Trainer trainer{config, vocab, docs, neg_table, in, out, processed,
                  vocab.train_words * static_cast<std::uint64_t>(config.epochs)};

  // Threads each take a contiguous slice of documents and run every epoch on
  // it, sharing the weight arrays without locks.
  const auto threads = std::min<std::size_t>(static_cast<std::size_t>(config.threads), docs.size());
  if (threads <= 1) {
    trainer.run(0, docs.size(), config.rng_seed);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t lo = docs.size() * t / threads;
      const std::size_t hi = docs.size() * (t + 1) / threads;
      pool.emplace_back([&trainer, lo, hi, seed = config.rng_seed + t] { trainer.run(lo, hi, seed); });
    }
  }

  EmbeddingTable table(dim);
  for (std::size_t w = 0; w < vocab.words.size(); ++w) {
    std::span<const double> row(in.data() + w * dim, dim);
    double norm = 0;
    for (double v : row) {
      if (!std::isfinite(v)) throw Error(ErrorKind::Numerical, "training diverged for '" + vocab.words[w] + "'");
      norm += v * v;
    }
    if (norm == 0.0) throw Error(ErrorKind::Numerical, "zero vector after training for '" + vocab.words[w] + "'");
    table.add(vocab.words[w], row);
  }
  table.metadata = {
      {"trainer", "sgns"},
      {"dim", std::to_string(config.dim)},
      {"window", std::to_string(config.window)},
      {"negatives", std::to_string(config.negatives)},
      {"epochs", std::to_string(config.epochs)},
      {"initial_learning_rate", detail::format_double(config.initial_learning_rate)},
      {"min_count", std::to_string(config.min_count)},
      {"subsample_threshold", detail::format_double(config.subsample_threshold)},
      {"rng_seed", std::to_string(config.rng_seed)},
      {"threads", std::to_string(config.threads)},
      {"corpus_tokens", std::to_string(corpus.token_count())},
      {"train_words", std::to_string(vocab.train_words)},
      {"vocab_size", std::to_string(vocab.words.size())},
  };
  return table;
}

std::string format_embeddings(const EmbeddingTable& table) {
  std::string out = std::to_string(table.size()) + " " + std::to_string(table.dim()) + "\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    out += table.words()[i];
    for (double v : table.row(i)) {
      out += ' ';
      out += detail::format_double(v);
    }
    out += '\n';
  }
  return out;
}

void save_embeddings(const EmbeddingTable& table, const std::filesystem::path& path) {
  detail::write_text_file(path, format_embeddings(table));
}

EmbeddingTable parse_embeddings(std::string_view text, const std::string& source) {
  const auto all = detail::lines(text);
  std::size_t first = 0;
  while (first < all.size() && detail::is_blank(all[first])) ++first;
  if (first == all.size()) throw Error(ErrorKind::EmptyInput, source + ": no vectors");

  auto fail = [&](std::size_t line, const std::string& what) -> Error {
    return Error(ErrorKind::Parse, source + ":" + std::to_string(line + 1) + ": " + what);
  };

  std::optional<std::size_t> expected_rows;
  std::size_t dim = 0;
  std::size_t row_start = first;
  const auto header = detail::split_ws(all[first]);
  if (header.size() == 2) {
    auto n = detail::parse_int<std::size_t>(header[0]);
    auto d = detail::parse_int<std::size_t>(header[1]);
    if (!n || !d || *d == 0) throw fail(first, "malformed header, expected 'vocab_count dim'");
    expected_rows = *n;
    dim = *d;
    row_start = first + 1;
  } else if (header.size() > 2) {
    dim = header.size() - 1;
  } else {
    throw fail(first, "malformed header, expected 'vocab_count dim'");
  }

  EmbeddingTable table(dim);
  std::vector<double> buf(dim);
  for (std::size_t i = row_start; i < all.size(); ++i) {
    if (detail::is_blank(all[i])) continue;
    const auto fields = detail::split_ws(all[i]);
    if (fields.size() != dim + 1)
      throw fail(i, "row '" + std::string(fields.empty() ? "" : fields[0]) + "' has " +
                        std::to_string(fields.size() - 1) + " values, header says " + std::to_string(dim));
    for (std::size_t j = 0; j < dim; ++j) {
      auto v = detail::parse_double(fields[j + 1]);
      if (!v || !std::isfinite(*v)) throw fail(i, "bad value '" + std::string(fields[j + 1]) + "'");
      buf[j] = *v;
    }
    try {
      table.add(std::string(fields[0]), buf);
    } catch (const Error& e) {
      throw fail(i, e.detail());
    }
  }
  if (expected_rows && *expected_rows != table.size())
    throw Error(ErrorKind::Parse, source + ": header announces " + std::to_string(*expected_rows) + " rows, found " +
                                      std::to_string(table.size()));
  table.metadata["source"] = source;
  return table;
}

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
  return parse_embeddings(read_text_file(path), path.string());
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::InvalidArgument,
                "vector lengths differ (" + std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa == 0.0 || bb == 0.0) throw Error(ErrorKind::DegenerateVector, "cosine of a zero vector");
  return std::clamp(ab / (std::sqrt(aa) * std::sqrt(bb)), -1.0, 1.0);
}

double cosine_distance(std::span<const double> a, std::span<const double> b) {
  return 1.0 - cosine_similarity(a, b);
}

std::vector<std::pair<std::string, double>> nearest_neighbors(const EmbeddingTable& table, std::string_view word,
                                                              std::size_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  const auto q = table.vector(word);
  std::vector<std::pair<std::string, double>> ranked;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table.words()[i] == word) continue;
    const auto r = table.row(i);
    if (std::all_of(r.begin(), r.end(), [](double v) { return v == 0.0; })) continue;
    ranked.emplace_back(table.words()[i], cosine_similarity(q, r));
  }
  auto better = [](const auto& a, const auto& b) { return a.second != b.second ? a.second > b.second : a.first < b.first; };
  const auto take = std::min(k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take), ranked.end(), better);
  ranked.resize(take);
  return ranked;
}

}  // namespace soaxis
