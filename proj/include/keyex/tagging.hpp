#ifndef KEYEX_TAGGING_HPP
#define KEYEX_TAGGING_HPP

#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "keyex/errors.hpp"
#include "keyex/textcorpus.hpp"

namespace keyex {

struct TaggedToken {
  std::string surface;
  std::string tag;

  friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

struct TaggedSentence {
  std::string doc_id;
  int sentence_index = 0;
  std::vector<TaggedToken> tokens;

  friend bool operator==(const TaggedSentence&, const TaggedSentence&) = default;
};

// Penn Treebank tags plus the punctuation tags emitted by the tokenizer.
const std::unordered_set<std::string>& tag_inventory();
bool is_known_tag(const std::string& tag);

enum class UnknownTagPolicy { passthrough, reject };

// Parses one "surface/TAG surface/TAG ..." line. The last '/' in a token
// separates surface from tag, so surfaces may contain slashes.
TaggedSentence parse_tagged(const std::string& line, const std::string& doc_id,
                            int sentence_index,
                            UnknownTagPolicy policy = UnknownTagPolicy::passthrough);

std::string format_tagged(const TaggedSentence& ts);

// Whitespace split with leading/trailing punctuation detached into separate
// tokens. Internal punctuation ("TCP/IP", "state-of-the-art") is preserved.
std::vector<std::string> tokenize(const std::string& text);

struct TagLexicon {
  std::unordered_map<std::string, std::string> word_tags;  // case-folded word
  std::vector<std::pair<std::string, std::string>> suffix_rules;  // in order
  std::string unknown_lower = "NN";
  std::string unknown_capitalized = "NNP";

  // Total: word hit; unknown capitalized words take unknown_capitalized;
  // otherwise first matching suffix rule, else unknown_lower.
  const std::string& lookup(const std::string& surface) const;

  static const TagLexicon& builtin();
  static TagLexicon parse(const std::string& text, const std::string& origin);
  static TagLexicon from_file(const std::string& path);
};

TaggedSentence tag_sentence(const Sentence& sentence, const TagLexicon& lexicon,
                            const std::string& doc_id = "");

}  // namespace keyex

#endif  // KEYEX_TAGGING_HPP
