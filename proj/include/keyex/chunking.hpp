#ifndef KEYEX_CHUNKING_HPP
#define KEYEX_CHUNKING_HPP

#include <map>
#include <string>
#include <vector>

#include "keyex/tagging.hpp"
#include "keyex/textcorpus.hpp"

namespace keyex {

// Tag classes of the noun-phrase automaton. Accepted phrases match
// ADJECTIVE* NOUN+ with an optional leading determiner that is consumed but
// not emitted; every other tag terminates a phrase.
bool is_adjective_tag(const std::string& tag);
bool is_noun_tag(const std::string& tag);
bool is_determiner_tag(const std::string& tag);

struct NounPhraseOccurrence {
  std::string doc_id;
  int sentence_index = 0;
  int phrase_index = 0;  // 1-based order within the sentence
  int span_begin = 0;    // token offsets [span_begin, span_end)
  int span_end = 0;
  std::string surface;   // original token text, single-space joined
  CanonicalPhrase phrase;
};

struct ChunkOptions {
  bool stem = true;  // stem flag forwarded to canonicalize
};

// Left-to-right maximal-munch scan; a run of only adjectives emits nothing.
std::vector<NounPhraseOccurrence> extract_noun_phrases(
    const TaggedSentence& ts, const ChunkOptions& options = {});

struct Candidate {
  CanonicalPhrase phrase;  // display taken from the first occurrence
  std::vector<NounPhraseOccurrence> occurrences;  // (sentence, phrase) order
};

// Keyed by canonical form; std::map keeps iteration deterministic.
using CandidateMap = std::map<std::string, Candidate>;

// Groups one document's occurrences into the candidate set.
CandidateMap enumerate_candidates(
    const std::vector<NounPhraseOccurrence>& occurrences);

}  // namespace keyex

#endif  // KEYEX_CHUNKING_HPP
