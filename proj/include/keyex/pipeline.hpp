#ifndef KEYEX_PIPELINE_HPP
#define KEYEX_PIPELINE_HPP

#include <string>
#include <vector>

#include "keyex/chunking.hpp"
#include "keyex/config.hpp"
#include "keyex/features.hpp"
#include "keyex/ranking.hpp"
#include "keyex/tagging.hpp"
#include "keyex/textcorpus.hpp"

namespace keyex {

struct PipelineOptions {
  bool stem = true;
  bool pretagged = false;
  bool title_line = false;
  int jobs = 1;
  UnknownTagPolicy unknown_tags = UnknownTagPolicy::passthrough;
  const TagLexicon* lexicon = nullptr;  // null selects the builtin lexicon

  static PipelineOptions from(const RunConfig& config) {
    PipelineOptions opts;
    opts.stem = config.stem;
    opts.pretagged = config.pretagged;
    opts.title_line = config.title_line;
    opts.jobs = config.jobs;
    opts.unknown_tags = config.reject_unknown_tags
                            ? UnknownTagPolicy::reject
                            : UnknownTagPolicy::passthrough;
    return opts;
  }
};

// Everything downstream stages need from one document.
struct DocumentData {
  std::string doc_id;
  int sentence_count = 0;
  std::vector<CanonicalPhrase> gold;
  CandidateMap candidates;
  std::vector<PhraseStats> stats;
  CandidateDetails details;
  // Canonicalized tokens per sentence, for gold-in-text checks.
  std::vector<std::vector<std::string>> sentence_words;
};

DocumentData process_document(const Document& doc,
                              const PipelineOptions& options);

DocumentData process_tagged_document(const std::string& doc_id,
                                     const std::vector<TaggedSentence>& tagged,
                                     std::vector<CanonicalPhrase> gold,
                                     const PipelineOptions& options);

// One sentence per non-empty line, in the surface/TAG format.
std::vector<TaggedSentence> parse_tagged_document(
    const std::string& text, const std::string& doc_id,
    UnknownTagPolicy policy = UnknownTagPolicy::passthrough);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Loads .txt (or .tag when pretagged) documents with their optional
// <doc_id>.keys sidecars, sorted by doc_id.
std::vector<DocumentData> load_corpus_dir(const std::string& dir,
                                          const PipelineOptions& options);

// N and candidate-set document frequencies over the given training subset.
CorpusStats build_corpus_stats(const std::vector<DocumentData>& docs,
                               const std::vector<std::string>& train_ids);

std::map<std::string, FeatureVector> featurize_document(
    const DocumentData& doc, const CorpusStats& corpus, int abstract_window);

}  // namespace keyex

#endif  // KEYEX_PIPELINE_HPP
