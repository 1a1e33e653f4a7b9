#ifndef KEYEX_TEXTCORPUS_HPP
#define KEYEX_TEXTCORPUS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "keyex/errors.hpp"

namespace keyex {

struct Sentence {
  int index = 0;  // 1-based, contiguous within a document
  std::string text;
};

// A phrase paired with the key used for all matching: case-folded,
// whitespace-collapsed, optionally per-word stemmed.
struct CanonicalPhrase {
  std::string display;
  std::string canonical;

  friend bool operator==(const CanonicalPhrase& a, const CanonicalPhrase& b) {
    return a.canonical == b.canonical;
  }
};

struct Document {
  std::string doc_id;
  std::vector<Sentence> sentences;
  std::vector<CanonicalPhrase> author_keyphrases;
};

const std::vector<std::string>& default_abbreviations();

struct SplitOptions {
  // Abbreviations suppress a sentence break at their trailing period.
  std::vector<std::string> abbreviations = default_abbreviations();
};

// Rule-based splitter: '.', '?' or '!' followed by whitespace and an
// uppercase letter (or end of text) ends a sentence. Indices run 1..n.
std::vector<Sentence> split_sentences(const std::string& text,
                                      const SplitOptions& options = {});

struct LoadOptions {
  // When set, the first non-empty line is taken verbatim as sentence 1 and
  // the remainder is sentence-split from index 2 on.
  bool title_line = false;
  SplitOptions split;
};

Document load_document(const std::string& raw, const std::string& doc_id,
                       const LoadOptions& options = {});

// Lowercases a single already-lowercased word by the suffix rules
// (ies->y, sses->ss, es->, s->). Exposed for tests.
std::string stem_word(const std::string& word);

CanonicalPhrase canonicalize(const std::string& surface, bool stem);

// One phrase per line; blank lines dropped, canonical duplicates collapsed,
// order preserved.
std::vector<CanonicalPhrase> load_author_keyphrases(const std::string& raw,
                                                    const std::string& doc_id,
                                                    bool stem);

bool utf8_valid(std::string_view bytes);

}  // namespace keyex

#endif  // KEYEX_TEXTCORPUS_HPP
