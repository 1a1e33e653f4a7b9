#include "keyex/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace keyex {

namespace {

namespace fs = std::filesystem;

template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> workers;
  int count = std::min<int>(jobs, static_cast<int>(n));
  workers.reserve(count);
  for (int t = 0; t < count; ++t) workers.emplace_back(worker);
  for (std::thread& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<std::string> sentence_canonical_words(const TaggedSentence& ts,
                                                  bool stem) {
  std::vector<std::string> words;
  words.reserve(ts.tokens.size());
  for (const TaggedToken& t : ts.tokens) {
    // Punctuation tokens stay in place so containment cannot jump across them.
    words.push_back(canonicalize(t.surface, stem).canonical);
  }
  return words;
}

DocumentData finish_document(const std::string& doc_id,
                             const std::vector<TaggedSentence>& tagged,
                             std::vector<CanonicalPhrase> gold,
                             const PipelineOptions& options) {
  DocumentData data;
  data.doc_id = doc_id;
  data.sentence_count = static_cast<int>(tagged.size());
  data.gold = std::move(gold);

  ChunkOptions chunk_opts;
  chunk_opts.stem = options.stem;

  std::vector<NounPhraseOccurrence> occurrences;
  for (const TaggedSentence& ts : tagged) {
    std::vector<NounPhraseOccurrence> sentence_occ =
        extract_noun_phrases(ts, chunk_opts);
    occurrences.insert(occurrences.end(), sentence_occ.begin(),
                       sentence_occ.end());
    data.sentence_words.push_back(sentence_canonical_words(ts, options.stem));
  }

  data.candidates = enumerate_candidates(occurrences);
  data.stats = accumulate_phrase_stats(data.candidates);
  for (const PhraseStats& ps : data.stats) {
    data.details[ps.canonical] = {ps.display, ps.first_sentence_index};
  }
  return data;
}

}  // namespace

std::vector<TaggedSentence> parse_tagged_document(const std::string& text,
                                                  const std::string& doc_id,
                                                  UnknownTagPolicy policy) {
  std::vector<TaggedSentence> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    TaggedSentence ts =
        parse_tagged(line, doc_id, static_cast<int>(out.size()) + 1, policy);
    if (!ts.tokens.empty()) out.push_back(std::move(ts));
  }
  return out;
}

DocumentData process_document(const Document& doc,
                              const PipelineOptions& options) {
  const TagLexicon& lexicon =
      options.lexicon ? *options.lexicon : TagLexicon::builtin();
  std::vector<TaggedSentence> tagged;
  tagged.reserve(doc.sentences.size());
  for (const Sentence& s : doc.sentences) {
    tagged.push_back(tag_sentence(s, lexicon, doc.doc_id));
  }
  return finish_document(doc.doc_id, tagged, doc.author_keyphrases, options);
}

DocumentData process_tagged_document(const std::string& doc_id,
                                     const std::vector<TaggedSentence>& tagged,
                                     std::vector<CanonicalPhrase> gold,
                                     const PipelineOptions& options) {
  return finish_document(doc_id, tagged, std::move(gold), options);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out << content;
  if (!out) throw IoError("short write to file: " + path);
}

std::vector<DocumentData> load_corpus_dir(const std::string& dir,
                                          const PipelineOptions& options) {
  if (!fs::is_directory(dir)) {
    throw IoError("corpus directory not found: " + dir);
  }
  const std::string extension = options.pretagged ? ".tag" : ".txt";
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == extension) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  std::vector<DocumentData> docs(files.size());
  parallel_for(files.size(), options.jobs, [&](std::size_t i) {
    const fs::path& path = files[i];
    const std::string doc_id = path.stem().string();

    std::vector<CanonicalPhrase> gold;
    fs::path keys = path;
    keys.replace_extension(".keys");
    if (fs::exists(keys)) {
      gold = load_author_keyphrases(read_file(keys.string()), doc_id,
                                    options.stem);
    }

    if (options.pretagged) {
      std::vector<TaggedSentence> tagged = parse_tagged_document(
          read_file(path.string()), doc_id, options.unknown_tags);
      docs[i] = process_tagged_document(doc_id, tagged, std::move(gold),
                                        options);
    } else {
      LoadOptions load_opts;
      load_opts.title_line = options.title_line;
      Document doc =
          load_document(read_file(path.string()), doc_id, load_opts);
      doc.author_keyphrases = std::move(gold);
      docs[i] = process_document(doc, options);
    }
  });
  return docs;
}

CorpusStats build_corpus_stats(const std::vector<DocumentData>& docs,
                               const std::vector<std::string>& train_ids) {
  CorpusStats stats;
  stats.n_documents = static_cast<int>(train_ids.size());
  for (const std::string& id : train_ids) {
    auto it = std::find_if(docs.begin(), docs.end(),
                           [&](const DocumentData& d) { return d.doc_id == id; });
    if (it == docs.end()) {
      throw ContractError("build_corpus_stats: unknown doc_id '" + id + "'");
    }
    for (const auto& [canonical, cand] : it->candidates) {
      (void)cand;
      ++stats.document_frequency[canonical];
    }
  }
  return stats;
}

std::map<std::string, FeatureVector> featurize_document(
    const DocumentData& doc, const CorpusStats& corpus, int abstract_window) {
  return build_feature_vectors(doc.stats, corpus, abstract_window);
}

}  // namespace keyex
