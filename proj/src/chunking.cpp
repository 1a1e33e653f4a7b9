#include "keyex/chunking.hpp"

#include <algorithm>
#include <tuple>

namespace keyex {

bool is_adjective_tag(const std::string& tag) {
  return tag == "JJ" || tag == "JJR" || tag == "JJS";
}

bool is_noun_tag(const std::string& tag) {
  return tag == "NN" || tag == "NNS" || tag == "NNP" || tag == "NNPS";
}

bool is_determiner_tag(const std::string& tag) { return tag == "DT"; }

std::vector<NounPhraseOccurrence> extract_noun_phrases(
    const TaggedSentence& ts, const ChunkOptions& options) {
  std::vector<NounPhraseOccurrence> out;
  const auto& tokens = ts.tokens;
  const std::size_t n = tokens.size();

  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    if (is_determiner_tag(tokens[j].tag)) ++j;  // leading DT, consumed
    std::size_t k = j;
    while (k < n && is_adjective_tag(tokens[k].tag)) ++k;
    std::size_t m = k;
    while (m < n && is_noun_tag(tokens[m].tag)) ++m;

    if (m == k) {
      // No noun: adjectives alone are not a phrase. Restart at the first
      // non-adjective token (it may be a DT opening the next phrase).
      i = k > i ? k : i + 1;
      continue;
    }

    NounPhraseOccurrence occ;
    occ.doc_id = ts.doc_id;
    occ.sentence_index = ts.sentence_index;
    occ.phrase_index = static_cast<int>(out.size()) + 1;
    occ.span_begin = static_cast<int>(j);
    occ.span_end = static_cast<int>(m);
    for (std::size_t t = j; t < m; ++t) {
      if (!occ.surface.empty()) occ.surface.push_back(' ');
      occ.surface += tokens[t].surface;
    }
    occ.phrase = canonicalize(occ.surface, options.stem);
    out.push_back(std::move(occ));
    i = m;
  }
  return out;
}

CandidateMap enumerate_candidates(
    const std::vector<NounPhraseOccurrence>& occurrences) {
  CandidateMap candidates;
  for (const NounPhraseOccurrence& occ : occurrences) {
    if (!occurrences.empty() && occ.doc_id != occurrences.front().doc_id) {
      throw ContractError("enumerate_candidates: occurrences span documents '" +
                          occurrences.front().doc_id + "' and '" + occ.doc_id +
                          "'");
    }
    Candidate& cand = candidates[occ.phrase.canonical];
    if (cand.occurrences.empty()) cand.phrase = occ.phrase;
    cand.occurrences.push_back(occ);
  }
  for (auto& [canonical, cand] : candidates) {
    (void)canonical;
    std::sort(cand.occurrences.begin(), cand.occurrences.end(),
              [](const NounPhraseOccurrence& a, const NounPhraseOccurrence& b) {
                return std::tie(a.sentence_index, a.phrase_index) <
                       std::tie(b.sentence_index, b.phrase_index);
              });
    cand.phrase = cand.occurrences.front().phrase;  // earliest surface wins
  }
  return candidates;
}

}  // namespace keyex
