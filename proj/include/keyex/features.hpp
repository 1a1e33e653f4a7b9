#ifndef KEYEX_FEATURES_HPP
#define KEYEX_FEATURES_HPP

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "keyex/chunking.hpp"
#include "keyex/errors.hpp"

namespace keyex {

struct PhraseStats {
  std::string canonical;
  std::string display;
  int pf = 0;   // independent occurrences as a maximal noun phrase
  int plc = 0;  // occurrences of other candidates containing this phrase
  int first_sentence_index = 0;
  int phrase_length = 0;        // words in the canonical form
  int longest_word_length = 0;  // characters of its longest word
};

struct CorpusStats {
  int n_documents = 0;
  std::unordered_map<std::string, int> document_frequency;

  std::string serialize() const;
  static CorpusStats deserialize(const std::string& text);
  static CorpusStats from_file(const std::string& path);
  void write_file(const std::string& path) const;
};

// sqrt(0.5 * pf^2 + plc); strictly increasing in each argument.
double f_freq(double pf, double plc);

// ln(n_documents / df); zero when the phrase is in every document.
double idf(int n_documents, int df);

// 1/sqrt(i) inside the abstract window, 0 beyond it.
double f_pos(int sentence_index, int abstract_window);

// sqrt(ln(1 + phrase_length) * ln(1 + longest_word_length)).
double f_plwl(int phrase_length, int longest_word_length);

struct FeatureVector {
  double thematic = 0.0;  // f_freq * idf, normalized by the document maximum
  double position = 0.0;  // f_pos (already in [0, 1])
  double length = 0.0;    // f_plwl, normalized by the document maximum
};

std::vector<PhraseStats> accumulate_phrase_stats(const CandidateMap& candidates);

// Unseen phrases take df = 1. A document whose maximum is 0 gets all-zero
// normalized values.
std::map<std::string, FeatureVector> build_feature_vectors(
    const std::vector<PhraseStats>& stats, const CorpusStats& corpus,
    int abstract_window);

enum class Label { positive, negative };

const char* label_name(Label label);

struct LabeledInstance {
  std::string doc_id;
  std::string canonical;
  FeatureVector features;
  Label label = Label::negative;
};

std::vector<LabeledInstance> label_instances(
    const std::string& doc_id,
    const std::map<std::string, FeatureVector>& vectors,
    const std::vector<CanonicalPhrase>& author_keys);

enum class DatasetFormat { arff, tsv };

std::string export_dataset(const std::vector<LabeledInstance>& instances,
                           DatasetFormat format);
std::vector<LabeledInstance> import_dataset(const std::string& text,
                                            DatasetFormat format);

}  // namespace keyex

#endif  // KEYEX_FEATURES_HPP
