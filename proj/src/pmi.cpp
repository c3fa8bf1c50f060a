#include "soaxis/pmi.hpp"

#include <algorithm>
#include <cmath>

#include "soaxis/error.hpp"
#include "text_util.hpp"

namespace soaxis {

NearIndex::NearIndex(const TaggedCorpus& corpus, int window, HitCounting counting)
    : window_(window), counting_(counting) {
  if (window < 0) throw Error(ErrorKind::InvalidArgument, "NEAR window must be non-negative");
  if (corpus.documents.empty()) throw Error(ErrorKind::EmptyInput, "cannot index an empty corpus");
  detail::Fnv1a h;
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    const auto& doc = corpus.documents[d];
    doc_ids_.push_back(doc.id);
    h.update(doc.id);
    h.update(std::string_view("\n", 1));
    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
      const auto& text = doc.tokens[i].text;
      h.update(text);
      h.update(std::string_view(" ", 1));
      auto& list = postings_[text];
      if (list.empty() || list.back().doc != d) list.push_back({static_cast<std::uint32_t>(d), {}});
      list.back().positions.push_back(static_cast<std::uint32_t>(i));
    }
  }
  fingerprint_ = h.hex();
}

std::vector<NearIndex::Posting> NearIndex::locate(std::string_view query) const {
  const auto parts = detail::split_ws(query);
  if (parts.empty()) return {};
  auto first = postings_.find(std::string(parts[0]));
  if (first == postings_.end()) return {};
  if (parts.size() == 1) return first->second;

  std::vector<const std::vector<Posting>*> rest;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    auto it = postings_.find(std::string(parts[i]));
    if (it == postings_.end()) return {};
    rest.push_back(&it->second);
  }
  auto positions_in = [](const std::vector<Posting>& list, std::uint32_t doc) -> const std::vector<std::uint32_t>* {
    auto it = std::lower_bound(list.begin(), list.end(), doc, [](const Posting& p, std::uint32_t d) { return p.doc < d; });
    return it != list.end() && it->doc == doc ? &it->positions : nullptr;
  };

  std::vector<Posting> out;
  for (const auto& p : first->second) {
    Posting kept{p.doc, {}};
    for (auto start : p.positions) {
      bool ok = true;
      for (std::size_t i = 0; i < rest.size() && ok; ++i) {
        const auto* pos = positions_in(*rest[i], p.doc);
        ok = pos && std::binary_search(pos->begin(), pos->end(), start + static_cast<std::uint32_t>(i + 1));
      }
      if (ok) kept.positions.push_back(start);
    }
    if (!kept.positions.empty()) out.push_back(std::move(kept));
  }
  return out;
}

std::vector<std::uint32_t> NearIndex::doc_hits(std::string_view query) const {
  std::vector<std::uint32_t> docs;
  for (const auto& p : locate(query)) docs.push_back(p.doc);
  return docs;
}

namespace {

// Number of (pa, pb) pairs with |pa - pb| <= window; both lists sorted.
std::uint64_t close_pairs(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b, int window,
                          bool stop_at_first) {
  std::uint64_t n = 0;
  std::size_t lo = 0;
  const auto w = static_cast<std::int64_t>(window);
  for (auto pa : a) {
    while (lo < b.size() && static_cast<std::int64_t>(b[lo]) < static_cast<std::int64_t>(pa) - w) ++lo;
    for (std::size_t j = lo; j < b.size() && static_cast<std::int64_t>(b[j]) <= static_cast<std::int64_t>(pa) + w; ++j) {
      ++n;
      if (stop_at_first) return n;
    }
  }
  return n;
}

template <typename Fn>
void for_common_docs(const auto& pa, const auto& pb, Fn&& fn) {
  std::size_t i = 0, j = 0;
  while (i < pa.size() && j < pb.size()) {
    if (pa[i].doc < pb[j].doc) ++i;
    else if (pb[j].doc < pa[i].doc) ++j;
    else fn(pa[i++], pb[j++]);
  }
}

}  // namespace

std::vector<std::uint32_t> NearIndex::near_docs(std::string_view a, std::string_view b) const {
  std::vector<std::uint32_t> docs;
  for_common_docs(locate(a), locate(b), [&](const Posting& x, const Posting& y) {
    if (close_pairs(x.positions, y.positions, window_, true) > 0) docs.push_back(x.doc);
  });
  return docs;
}

std::uint64_t NearIndex::hits(std::string_view query) const {
  const auto found = locate(query);
  if (counting_ == HitCounting::Document) return found.size();
  std::uint64_t n = 0;
  for (const auto& p : found) n += p.positions.size();
  return n;
}

std::uint64_t NearIndex::near_hits(std::string_view a, std::string_view b) const {
  if (counting_ == HitCounting::Document) return near_docs(a, b).size();
  std::uint64_t n = 0;
  for_common_docs(locate(a), locate(b), [&](const Posting& x, const Posting& y) {
    n += close_pairs(x.positions, y.positions, window_, false);
  });
  return n;
}

std::vector<std::string> NearIndex::terms() const {
  std::vector<std::string> out;
  out.reserve(postings_.size());
  for (const auto& [t, _] : postings_) out.push_back(t);
  std::sort(out.begin(), out.end());
  return out;
}

NearIndex build_near_index(const TaggedCorpus& corpus, int window, HitCounting counting) {
  return NearIndex(corpus, window, counting);
}

double semantic_orientation(const HitCounts& c) {
  if (c.pos_seed == 0 || c.neg_seed == 0)
    throw Error(ErrorKind::SeedMissing, "a seed word never occurs in the indexed corpus");
  auto smooth = [](std::uint64_t n) { return n == 0 ? kZeroHitSmoothing : static_cast<double>(n); };
  // difference of logs so that swapping the seeds negates the result exactly
  return std::log2(smooth(c.near_pos) * static_cast<double>(c.neg_seed)) -
         std::log2(smooth(c.near_neg) * static_cast<double>(c.pos_seed));
}

PhraseSO so_phrase(const NearIndex& index, const std::pair<std::string, std::string>& phrase,
                   const std::string& pos_seed, const std::string& neg_seed) {
  PhraseSO out;
  out.phrase = phrase;
  out.hit_counts.pos_seed = index.hits(pos_seed);
  out.hit_counts.neg_seed = index.hits(neg_seed);
  if (out.hit_counts.pos_seed == 0)
    throw Error(ErrorKind::SeedMissing, "seed '" + pos_seed + "' never occurs in the indexed corpus");
  if (out.hit_counts.neg_seed == 0)
    throw Error(ErrorKind::SeedMissing, "seed '" + neg_seed + "' never occurs in the indexed corpus");
  const std::string query = phrase.first + " " + phrase.second;
  out.hit_counts.near_pos = index.near_hits(query, pos_seed);
  out.hit_counts.near_neg = index.near_hits(query, neg_seed);
  out.so = semantic_orientation(out.hit_counts);
  return out;
}

PmiDecision classify_review_pmi(const NearIndex& index, const TaggedDocument& review,
                                const std::vector<PatternRule>& rules, const std::string& pos_seed,
                                const std::string& neg_seed) {
  PmiDecision decision;
  const auto phrases = extract_phrases(review, rules);
  decision.phrase_count = phrases.size();
  if (phrases.empty()) {
    decision.no_phrase = true;
    return decision;
  }
  double sum = 0;
  for (const auto& p : phrases) sum += so_phrase(index, {p.w1, p.w2}, pos_seed, neg_seed).so;
  decision.mean_so = sum / static_cast<double>(phrases.size());
  decision.label = decision.mean_so < 0 ? Polarity::Neg : Polarity::Pos;
  return decision;
}

namespace {

std::string join_docs(const NearIndex& index, const std::vector<std::uint32_t>& docs) {
  std::string out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (i) out += ',';
    out += index.doc_id(docs[i]);
  }
  return out;
}

std::vector<std::string> split_docs(std::string_view s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  for (auto part : detail::split(s, ',')) out.emplace_back(part);
  return out;
}

}  // namespace

std::string format_near_index(const NearIndex& index,
                              const std::vector<std::pair<std::string, std::string>>& near_pairs) {
  std::string out = "# near-index window=" + std::to_string(index.window()) + " counting=" +
                    (index.counting() == HitCounting::Document ? "document" : "token") +
                    " corpus=" + index.corpus_fingerprint() + " documents=" + std::to_string(index.document_count()) +
                    "\n";
  for (const auto& t : index.terms()) out += "D\t" + t + "\t" + join_docs(index, index.doc_hits(t)) + "\n";
  for (const auto& [a, b] : near_pairs)
    out += "N\t" + a + "\t" + b + "\t" + join_docs(index, index.near_docs(a, b)) + "\n";
  return out;
}

HitDump parse_near_index_dump(std::string_view text) {
  HitDump dump;
  std::size_t lineno = 0;
  for (auto line : detail::lines(text)) {
    ++lineno;
    if (detail::is_blank(line)) continue;
    if (line.front() == '#') {
      for (auto kv : detail::split_ws(line.substr(1))) {
        if (kv.starts_with("window="))
          if (auto w = detail::parse_int<int>(kv.substr(7))) dump.window = *w;
        if (kv.starts_with("corpus=")) dump.corpus_fingerprint = std::string(kv.substr(7));
      }
      continue;
    }
    auto f = detail::split(line, '\t');
    if (f[0] == "D" && f.size() == 3) {
      dump.doc_hits[std::string(f[1])] = split_docs(f[2]);
    } else if (f[0] == "N" && f.size() == 4) {
      dump.near_hits[{std::string(f[1]), std::string(f[2])}] = split_docs(f[3]);
    } else {
      throw Error(ErrorKind::Parse, "index dump line " + std::to_string(lineno) + ": unknown record");
    }
  }
  return dump;
}

}  // namespace soaxis
