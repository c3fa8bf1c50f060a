#include "soaxis/corpus.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "soaxis/error.hpp"
#include "text_util.hpp"

namespace soaxis {

std::string_view to_string(Polarity p) { return p == Polarity::Pos ? "POS" : "NEG"; }

std::optional<Polarity> parse_polarity(std::string_view s) {
  if (s == "POS" || s == "pos" || s == "1" || s == "+1") return Polarity::Pos;
  if (s == "NEG" || s == "neg" || s == "-1") return Polarity::Neg;
  return std::nullopt;
}

bool is_penn_tag(std::string_view tag) {
  static const std::unordered_set<std::string_view> kTags = {
      "CC",  "CD",  "DT",   "EX",  "FW",  "IN",  "JJ",    "JJR",   "JJS", "LS", "MD",
      "NN",  "NNS", "NNP",  "NNPS", "PDT", "POS", "PRP",  "PRP$",  "RB",  "RBR", "RBS",
      "RP",  "SYM", "TO",   "UH",  "VB",  "VBD", "VBG",   "VBN",   "VBP", "VBZ", "WDT",
      "WP",  "WP$", "WRB",  ".",   ",",   ":",   "``",    "''",    "(",   ")",  "-LRB-",
      "-RRB-", "#", "$",    "HYPH", "NFP"};
  return kTags.contains(tag);
}

std::size_t TaggedCorpus::token_count() const {
  std::size_t n = 0;
  for (const auto& d : documents) n += d.tokens.size();
  return n;
}

const TaggedDocument* TaggedCorpus::find(std::string_view id) const {
  for (const auto& d : documents)
    if (d.id == id) return &d;
  return nullptr;
}

std::optional<CorpusFormat> parse_corpus_format(std::string_view s) {
  if (s == "a" || s == "A" || s == "token-per-line" || s == "tsv") return CorpusFormat::TokenPerLine;
  if (s == "b" || s == "B" || s == "inline" || s == "inline-tags") return CorpusFormat::InlineTags;
  return std::nullopt;
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (auto& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

[[noreturn]] void parse_fail(const std::string& source, std::size_t line, const std::string& what) {
  throw Error(ErrorKind::Parse, source + ":" + std::to_string(line) + ": " + what);
}

bool is_doc_header(std::string_view line) { return line.starts_with("# doc"); }

void check_unique_ids(const TaggedCorpus& corpus) {
  std::unordered_set<std::string_view> seen;
  for (const auto& d : corpus.documents)
    if (!seen.insert(d.id).second)
      throw Error(ErrorKind::Parse, corpus.source + ": duplicate document id '" + d.id + "'");
}

TaggedCorpus parse_token_per_line(std::string_view text, std::string source) {
  TaggedCorpus corpus;
  corpus.source = std::move(source);
  TaggedDocument current;
  bool open = false;
  auto close = [&]() {
    if (open && !current.tokens.empty()) {
      if (current.id.empty()) current.id = "doc" + std::to_string(corpus.documents.size() + 1);
      corpus.documents.push_back(std::move(current));
    }
    current = TaggedDocument{};
    open = false;
  };

  std::size_t lineno = 0;
  for (std::string_view line : detail::lines(text)) {
    ++lineno;
    if (detail::is_blank(line)) {
      close();
      continue;
    }
    if (is_doc_header(line)) {
      close();
      auto fields = detail::split_ws(line.substr(5));
      if (fields.empty() || fields.size() > 2) parse_fail(corpus.source, lineno, "malformed document header");
      current.id = std::string(fields[0]);
      if (fields.size() == 2) {
        if (fields[1] != "-") {
          current.label = parse_polarity(fields[1]);
          if (!current.label) parse_fail(corpus.source, lineno, "unknown label '" + std::string(fields[1]) + "'");
        }
      }
      open = true;
      continue;
    }
    auto fields = detail::split(line, '\t');
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
      parse_fail(corpus.source, lineno, "expected 'token<TAB>TAG', got " + std::to_string(fields.size()) + " field(s)");
    current.tokens.push_back({lowercase(fields[0]), std::string(fields[1])});
    open = true;
  }
  close();
  return corpus;
}

TaggedToken parse_inline_token(std::string_view item, const std::string& source, std::size_t lineno) {
  auto cut = item.rfind('_');
  if (cut == std::string_view::npos || cut == 0 || cut + 1 == item.size())
    parse_fail(source, lineno, "token '" + std::string(item) + "' is not of the form word_TAG");
  return {lowercase(item.substr(0, cut)), std::string(item.substr(cut + 1))};
}

TaggedCorpus parse_inline(std::string_view text, std::string source) {
  TaggedCorpus corpus;
  corpus.source = std::move(source);
  std::size_t lineno = 0;
  for (std::string_view line : detail::lines(text)) {
    ++lineno;
    if (detail::is_blank(line)) continue;
    auto fields = detail::split(line, '\t');
    TaggedDocument doc;
    std::string_view body;
    std::string_view label;
    if (fields.size() == 1) {
      body = fields[0];
    } else if (fields.size() == 2) {
      label = fields[0];
      body = fields[1];
    } else if (fields.size() == 3) {
      doc.id = std::string(fields[0]);
      label = fields[1];
      body = fields[2];
    } else {
      parse_fail(corpus.source, lineno, "too many tab-separated fields");
    }
    if (!label.empty() && label != "-") {
      doc.label = parse_polarity(label);
      if (!doc.label) parse_fail(corpus.source, lineno, "unknown label '" + std::string(label) + "'");
    }
    for (auto item : detail::split(body, ' ')) {
      if (item.empty()) continue;
      doc.tokens.push_back(parse_inline_token(item, corpus.source, lineno));
    }
    if (doc.tokens.empty()) parse_fail(corpus.source, lineno, "document has no tokens");
    if (doc.id.empty()) doc.id = "doc" + std::to_string(corpus.documents.size() + 1);
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

}  // namespace

CorpusFormat detect_corpus_format(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  for (std::string_view line : detail::lines(text)) {
    if (detail::is_blank(line) || is_doc_header(line)) continue;
    auto fields = detail::split(line, '\t');
    if (fields.size() == 2 && fields[1].find(' ') == std::string_view::npos &&
        fields[1].find('_') == std::string_view::npos)
      return CorpusFormat::TokenPerLine;
    return CorpusFormat::InlineTags;
  }
  return CorpusFormat::TokenPerLine;
}

TaggedCorpus parse_tagged_corpus(std::string_view text, CorpusFormat format, std::string source) {
  TaggedCorpus corpus = format == CorpusFormat::TokenPerLine ? parse_token_per_line(text, std::move(source))
                                                             : parse_inline(text, std::move(source));
  if (corpus.documents.empty()) throw Error(ErrorKind::EmptyInput, corpus.source + ": no documents");
  check_unique_ids(corpus);
  return corpus;
}

TaggedCorpus load_tagged_corpus(const std::filesystem::path& path, CorpusFormat format) {
  return parse_tagged_corpus(read_text_file(path), format, path.string());
}

std::string format_tagged_corpus(const TaggedCorpus& corpus, CorpusFormat format) {
  std::string out;
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    const auto& d = corpus.documents[i];
    const std::string label = d.label ? std::string(to_string(*d.label)) : "-";
    if (format == CorpusFormat::TokenPerLine) {
      if (i > 0) out += '\n';
      out += "# doc " + d.id + " " + label + "\n";
      for (const auto& t : d.tokens) out += t.text + "\t" + t.tag + "\n";
    } else {
      out += d.id + "\t" + label + "\t";
      for (std::size_t j = 0; j < d.tokens.size(); ++j) {
        if (j) out += ' ';
        out += d.tokens[j].text + "_" + d.tokens[j].tag;
      }
      out += '\n';
    }
  }
  return out;
}

void save_tagged_corpus(const TaggedCorpus& corpus, const std::filesystem::path& path, CorpusFormat format) {
  detail::write_text_file(path, format_tagged_corpus(corpus, format));
}

TaggedCorpus labeled_only(const TaggedCorpus& corpus) {
  TaggedCorpus out;
  out.source = corpus.source;
  for (const auto& d : corpus.documents)
    if (d.label) out.documents.push_back(d);
  return out;
}

std::optional<double> PolarityLexicon::score(std::string_view word) const {
  auto it = entries.find(std::string(word));
  if (it == entries.end()) return std::nullopt;
  return it->second;
}

PolarityLexicon parse_polarity_lexicon(std::string_view text) {
  PolarityLexicon lex;
  std::size_t lineno = 0;
  for (std::string_view line : detail::lines(text)) {
    ++lineno;
    if (detail::is_blank(line) || line.front() == '#') continue;
    auto fields = detail::split(line, '\t');
    if (fields.size() != 2 || fields[0].empty())
      throw Error(ErrorKind::Parse, "lexicon line " + std::to_string(lineno) + ": expected 'word<TAB>score'");
    auto score = detail::parse_double(detail::trim(fields[1]));
    if (!score || !std::isfinite(*score))
      throw Error(ErrorKind::Parse, "lexicon line " + std::to_string(lineno) + ": non-numeric score '" +
                                        std::string(fields[1]) + "'");
    auto [it, inserted] = lex.entries.insert_or_assign(lowercase(fields[0]), *score);
    if (!inserted) ++lex.duplicate_count;
  }
  if (lex.entries.empty()) throw Error(ErrorKind::EmptyInput, "lexicon has no entries");
  return lex;
}

PolarityLexicon load_polarity_lexicon(const std::filesystem::path& path) {
  return parse_polarity_lexicon(read_text_file(path));
}

std::uint64_t FreqTable::count(std::string_view word) const {
  auto it = counts.find(std::string(word));
  return it == counts.end() ? 0 : it->second;
}

FreqTable count_frequencies(const TaggedCorpus& corpus) {
  FreqTable table;
  for (const auto& d : corpus.documents)
    for (const auto& t : d.tokens) {
      ++table.counts[t.text];
      ++table.total;
    }
  return table;
}

}  // namespace soaxis
