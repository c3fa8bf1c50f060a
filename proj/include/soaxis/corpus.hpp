#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace soaxis {

enum class Polarity { Pos, Neg };

std::string_view to_string(Polarity p);
std::optional<Polarity> parse_polarity(std::string_view s);

/// True for tags of the Penn Treebank inventory. Anything else is kept
/// verbatim on the token but never matches a pattern rule.
bool is_penn_tag(std::string_view tag);

struct TaggedToken {
  std::string text;  // lowercased
  std::string tag;

  bool recognized() const { return is_penn_tag(tag); }
  friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

struct TaggedDocument {
  std::string id;
  std::vector<TaggedToken> tokens;
  std::optional<Polarity> label;

  friend bool operator==(const TaggedDocument&, const TaggedDocument&) = default;
};

struct TaggedCorpus {
  std::vector<TaggedDocument> documents;
  std::string source;

  std::size_t token_count() const;
  const TaggedDocument* find(std::string_view id) const;

  // Equality ignores provenance.
  friend bool operator==(const TaggedCorpus& a, const TaggedCorpus& b) {
    return a.documents == b.documents;
  }
};

enum class CorpusFormat {
  // "token<TAB>TAG" per line, blank line between documents; an optional
  // "# doc <id> [POS|NEG]" line opens a document with an id and label.
  TokenPerLine,
  // One document per line, "tok_TAG tok_TAG ...", optionally prefixed by
  // "<label><TAB>" or "<id><TAB><label><TAB>" where label is POS, NEG or '-'.
  InlineTags,
};

std::optional<CorpusFormat> parse_corpus_format(std::string_view s);

/// Guesses the format from the first content line of the file.
CorpusFormat detect_corpus_format(const std::filesystem::path& path);

TaggedCorpus load_tagged_corpus(const std::filesystem::path& path, CorpusFormat format);
TaggedCorpus parse_tagged_corpus(std::string_view text, CorpusFormat format,
                                 std::string source = "<memory>");

void save_tagged_corpus(const TaggedCorpus& corpus, const std::filesystem::path& path,
                        CorpusFormat format = CorpusFormat::TokenPerLine);
std::string format_tagged_corpus(const TaggedCorpus& corpus,
                                 CorpusFormat format = CorpusFormat::TokenPerLine);

/// Keeps only documents carrying a POS/NEG label (neutral or unlabeled
/// reviews are excluded before a binary evaluation).
TaggedCorpus labeled_only(const TaggedCorpus& corpus);

struct PolarityLexicon {
  std::map<std::string, double> entries;
  double neutral_threshold = 0.0;
  std::size_t duplicate_count = 0;

  std::optional<double> score(std::string_view word) const;
  std::size_t size() const { return entries.size(); }
};

PolarityLexicon load_polarity_lexicon(const std::filesystem::path& path);
PolarityLexicon parse_polarity_lexicon(std::string_view text);

struct FreqTable {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;

  std::uint64_t count(std::string_view word) const;
};

FreqTable count_frequencies(const TaggedCorpus& corpus);

// ASCII lowercasing; bytes >= 0x80 pass through untouched.
std::string lowercase(std::string_view s);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace soaxis
