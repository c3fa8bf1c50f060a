#include "soaxis/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "soaxis/error.hpp"
#include "text_util.hpp"

namespace soaxis {

bool PatternRule::matches(std::string_view tag1, std::string_view tag2, const std::string* tag3) const {
  if (!first.contains(std::string(tag1)) || !second.contains(std::string(tag2))) return false;
  if (third == ThirdWord::Anything || tag3 == nullptr) return true;
  return *tag3 != "NN" && *tag3 != "NNS";
}

const std::vector<PatternRule>& builtin_rules() {
  static const std::vector<PatternRule> kRules = {
      {{"JJ"}, {"NN", "NNS"}, ThirdWord::Anything},
      {{"RB", "RBR", "RBS"}, {"JJ"}, ThirdWord::NotNounNorPlural},
      {{"JJ"}, {"JJ"}, ThirdWord::NotNounNorPlural},
      {{"NN", "NNS"}, {"VB", "VBD"}, ThirdWord::NotNounNorPlural},
      {{"RB", "RBR", "RBS"}, {"VBN", "VBG"}, ThirdWord::Anything},
  };
  return kRules;
}

std::vector<PhraseOccurrence> extract_phrases(const TaggedDocument& doc, const std::vector<PatternRule>& rules) {
  std::vector<PhraseOccurrence> out;
  const auto& toks = doc.tokens;
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    const std::string* third = i + 2 < toks.size() ? &toks[i + 2].tag : nullptr;
    for (std::size_t r = 0; r < rules.size(); ++r) {
      if (rules[r].matches(toks[i].tag, toks[i + 1].tag, third)) {
        out.push_back({toks[i].text, toks[i + 1].text, static_cast<int>(r + 1), doc.id, i});
        break;
      }
    }
  }
  return out;
}

std::vector<PhraseOccurrence> extract_phrases(const TaggedCorpus& corpus, const std::vector<PatternRule>& rules) {
  std::vector<PhraseOccurrence> out;
  for (const auto& d : corpus.documents) {
    auto part = extract_phrases(d, rules);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

bool is_modifier_tag(std::string_view tag, bool include_jjr) {
  if (tag == "JJR") return include_jjr;
  return tag == "JJ" || tag == "JJS" || tag == "RB" || tag == "RBR" || tag == "RBS";
}

PointWordSet select_point_words(const std::vector<PhraseOccurrence>& phrases, const TaggedCorpus& corpus,
                                std::uint64_t cutoff, bool include_jjr) {
  if (cutoff < 1) throw Error(ErrorKind::InvalidArgument, "cutoff must be at least 1");
  PointWordSet set;
  set.cutoff = cutoff;

  std::map<std::pair<std::string, std::string>, std::uint64_t> type_counts;
  for (const auto& p : phrases) ++type_counts[{p.w1, p.w2}];
  for (const auto& [key, n] : type_counts)
    if (n >= cutoff) set.phrase_counts.emplace(key, n);
  if (set.phrase_counts.empty())
    throw Error(ErrorKind::EmptySelection, "no phrase reaches cutoff " + std::to_string(cutoff));

  std::unordered_map<std::string_view, const TaggedDocument*> by_id;
  for (const auto& d : corpus.documents) by_id.emplace(d.id, &d);

  for (const auto& p : phrases) {
    if (!set.phrase_counts.contains({p.w1, p.w2})) continue;
    auto it = by_id.find(p.doc_id);
    if (it == by_id.end() || p.position + 1 >= it->second->tokens.size())
      throw Error(ErrorKind::InvalidArgument,
                  "phrase at " + p.doc_id + ":" + std::to_string(p.position) + " does not point into the corpus");
    const auto& toks = it->second->tokens;
    const TaggedToken& a = toks[p.position];
    const TaggedToken& b = toks[p.position + 1];
    if (a.text != p.w1 || b.text != p.w2)
      throw Error(ErrorKind::InvalidArgument,
                  "phrase '" + p.w1 + " " + p.w2 + "' does not match the corpus at " + p.doc_id + ":" +
                      std::to_string(p.position));
    for (const TaggedToken* t : {&a, &b}) {
      if (!is_modifier_tag(t->tag, include_jjr)) continue;
      set.words.insert(t->text);
      ++set.word_counts[t->text];
    }
  }
  if (set.words.empty())
    throw Error(ErrorKind::EmptySelection,
                "phrases at cutoff " + std::to_string(cutoff) + " contain no adjective or adverb");
  return set;
}

double TagVarianceReport::share(const std::string& tag) const {
  auto it = per_tag.find(tag);
  if (it == per_tag.end() || total_variance == 0.0) return 0.0;
  return it->second.variance * static_cast<double>(it->second.count) / total_variance;
}

std::vector<std::string> TagVarianceReport::ranking() const {
  std::vector<std::string> tags;
  for (const auto& [t, _] : per_tag) tags.push_back(t);
  std::stable_sort(tags.begin(), tags.end(), [&](const auto& a, const auto& b) {
    const auto& va = per_tag.at(a);
    const auto& vb = per_tag.at(b);
    return va.variance * static_cast<double>(va.count) > vb.variance * static_cast<double>(vb.count);
  });
  return tags;
}

TagVarianceReport tag_polarity_variance(const std::vector<AnnotatedToken>& annotated) {
  if (annotated.empty()) throw Error(ErrorKind::EmptyInput, "no annotated tokens");
  std::map<std::string, std::vector<double>> groups;
  for (const auto& a : annotated) {
    if (!std::isfinite(a.polarity))
      throw Error(ErrorKind::InvalidArgument, "non-finite polarity for '" + a.token.text + "'");
    groups[a.token.tag].push_back(a.polarity);
  }
  TagVarianceReport report;
  for (const auto& [tag, values] : groups) {
    // two-pass population variance
    double mean = 0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0;
    for (double v : values) ss += (v - mean) * (v - mean);
    TagVariance tv{ss / static_cast<double>(values.size()), values.size()};
    report.total_variance += tv.variance * static_cast<double>(tv.count);
    report.per_tag.emplace(tag, tv);
  }
  return report;
}

std::string format_phrases(const std::vector<PhraseOccurrence>& phrases) {
  std::string out;
  for (const auto& p : phrases)
    out += p.w1 + "\t" + p.w2 + "\t" + std::to_string(p.rule_index) + "\t" + p.doc_id + "\t" +
           std::to_string(p.position) + "\n";
  return out;
}

std::vector<PhraseOccurrence> parse_phrases(std::string_view text) {
  std::vector<PhraseOccurrence> out;
  std::size_t lineno = 0;
  for (auto line : detail::lines(text)) {
    ++lineno;
    if (detail::is_blank(line) || line.front() == '#') continue;
    auto f = detail::split(line, '\t');
    auto rule = f.size() == 5 ? detail::parse_int<int>(f[2]) : std::nullopt;
    auto pos = f.size() == 5 ? detail::parse_int<std::size_t>(f[4]) : std::nullopt;
    if (!rule || !pos || *rule < 1 || *rule > 5 || f[0].empty() || f[1].empty())
      throw Error(ErrorKind::Parse, "phrase line " + std::to_string(lineno) + ": expected w1, w2, rule, doc_id, position");
    out.push_back({std::string(f[0]), std::string(f[1]), *rule, std::string(f[3]), *pos});
  }
  return out;
}

std::string format_point_words(const PointWordSet& points) {
  std::string out = "# cutoff=" + std::to_string(points.cutoff) + "\n";
  for (const auto& w : points.words) {
    auto it = points.word_counts.find(w);
    out += w + "\t" + std::to_string(it == points.word_counts.end() ? 0 : it->second) + "\n";
  }
  return out;
}

PointWordSet parse_point_words(std::string_view text) {
  PointWordSet set;
  std::size_t lineno = 0;
  for (auto line : detail::lines(text)) {
    ++lineno;
    if (detail::is_blank(line)) continue;
    if (line.front() == '#') {
      auto body = detail::trim(line.substr(1));
      if (body.starts_with("cutoff="))
        if (auto c = detail::parse_int<std::uint64_t>(body.substr(7))) set.cutoff = *c;
      continue;
    }
    auto f = detail::split(line, '\t');
    auto count = f.size() == 2 ? detail::parse_int<std::uint64_t>(f[1]) : std::nullopt;
    if (!count || f[0].empty())
      throw Error(ErrorKind::Parse, "point-word line " + std::to_string(lineno) + ": expected 'word<TAB>count'");
    set.words.insert(std::string(f[0]));
    set.word_counts[std::string(f[0])] = *count;
  }
  if (set.words.empty()) throw Error(ErrorKind::EmptyInput, "point-word file lists no words");
  return set;
}

std::vector<AnnotatedToken> parse_annotated(std::string_view text) {
  std::vector<AnnotatedToken> out;
  std::size_t lineno = 0;
  for (auto line : detail::lines(text)) {
    ++lineno;
    if (detail::is_blank(line) || line.front() == '#') continue;
    auto f = detail::split(line, '\t');
    auto v = f.size() == 3 ? detail::parse_double(detail::trim(f[2])) : std::nullopt;
    if (!v || f[0].empty() || f[1].empty())
      throw Error(ErrorKind::Parse, "annotated line " + std::to_string(lineno) + ": expected token, tag, polarity");
    out.push_back({{lowercase(f[0]), std::string(f[1])}, *v});
  }
  return out;
}

std::string format_tag_variance(const TagVarianceReport& report) {
  std::string out = "# tag\tvariance\tcount\tshare\n";
  for (const auto& tag : report.ranking()) {
    const auto& tv = report.per_tag.at(tag);
    out += tag + "\t" + detail::format_double(tv.variance) + "\t" + std::to_string(tv.count) + "\t" +
           detail::format_fixed(report.share(tag), 6) + "\n";
  }
  out += "# total_variance=" + detail::format_double(report.total_variance) + "\n";
  return out;
}

}  // namespace soaxis
