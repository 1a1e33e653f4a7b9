#include "keyex/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "keyex/util.hpp"

namespace keyex {

namespace {

std::vector<std::string> split_words(const std::string& canonical) {
  std::vector<std::string> words;
  std::size_t pos = 0;
  while (pos <= canonical.size()) {
    std::size_t sp = canonical.find(' ', pos);
    if (sp == std::string::npos) sp = canonical.size();
    if (sp > pos) words.push_back(canonical.substr(pos, sp - pos));
    pos = sp + 1;
  }
  return words;
}

bool contains_contiguous(const std::vector<std::string>& haystack,
                         const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  for (std::size_t offset = 0; offset + needle.size() <= haystack.size();
       ++offset) {
    bool match = true;
    for (std::size_t i = 0; i < needle.size(); ++i) {
      if (haystack[offset + i] != needle[i]) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

}  // namespace

double f_freq(double pf, double plc) {
  if (pf < 0 || plc < 0) {
    throw ContractError("f_freq: negative input (pf=" + std::to_string(pf) +
                        ", plc=" + std::to_string(plc) + ")");
  }
  return std::sqrt(0.5 * pf * pf + plc);
}

double idf(int n_documents, int df) {
  if (n_documents < 1 || df < 1 || df > n_documents) {
    throw ContractError("idf: require 1 <= df <= n_documents, got df=" +
                        std::to_string(df) + ", n=" +
                        std::to_string(n_documents));
  }
  return std::log(static_cast<double>(n_documents) / df);
}

double f_pos(int sentence_index, int abstract_window) {
  if (sentence_index < 1) {
    throw ContractError("f_pos: sentence index must be >= 1, got " +
                        std::to_string(sentence_index));
  }
  if (abstract_window < 0) {
    throw ContractError("f_pos: abstract window must be >= 0, got " +
                        std::to_string(abstract_window));
  }
  if (sentence_index > abstract_window) return 0.0;
  return 1.0 / std::sqrt(static_cast<double>(sentence_index));
}

double f_plwl(int phrase_length, int longest_word_length) {
  if (phrase_length < 1 || longest_word_length < 1) {
    throw ContractError("f_plwl: lengths must be >= 1, got PL=" +
                        std::to_string(phrase_length) + ", WL=" +
                        std::to_string(longest_word_length));
  }
  return std::sqrt(std::log(1.0 + phrase_length) *
                   std::log(1.0 + longest_word_length));
}

std::vector<PhraseStats> accumulate_phrase_stats(
    const CandidateMap& candidates) {
  struct Entry {
    const Candidate* candidate;
    std::vector<std::string> words;
  };
  std::vector<Entry> entries;
  entries.reserve(candidates.size());
  for (const auto& [canonical, cand] : candidates) {
    (void)canonical;
    entries.push_back({&cand, split_words(cand.phrase.canonical)});
  }

  std::vector<PhraseStats> out;
  out.reserve(entries.size());
  for (const Entry& e : entries) {
    PhraseStats ps;
    ps.canonical = e.candidate->phrase.canonical;
    ps.display = e.candidate->phrase.display;
    ps.pf = static_cast<int>(e.candidate->occurrences.size());
    ps.first_sentence_index = e.candidate->occurrences.front().sentence_index;
    ps.phrase_length = static_cast<int>(e.words.size());
    for (const std::string& w : e.words) {
      ps.longest_word_length =
          std::max(ps.longest_word_length, static_cast<int>(w.size()));
    }
    // Every occurrence of a containing candidate counts one link.
    for (const Entry& other : entries) {
      if (other.candidate == e.candidate) continue;
      if (contains_contiguous(other.words, e.words)) {
        ps.plc += static_cast<int>(other.candidate->occurrences.size());
      }
    }
    out.push_back(std::move(ps));
  }
  return out;
}

std::map<std::string, FeatureVector> build_feature_vectors(
    const std::vector<PhraseStats>& stats, const CorpusStats& corpus,
    int abstract_window) {
  std::map<std::string, FeatureVector> out;
  if (stats.empty()) return out;

  std::vector<double> thematic(stats.size());
  std::vector<double> length(stats.size());
  double max_thematic = 0.0;
  double max_length = 0.0;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const PhraseStats& ps = stats[i];
    auto it = corpus.document_frequency.find(ps.canonical);
    int df = it != corpus.document_frequency.end() ? it->second : 1;
    thematic[i] = f_freq(ps.pf, ps.plc) * idf(corpus.n_documents, df);
    length[i] = f_plwl(ps.phrase_length, ps.longest_word_length);
    max_thematic = std::max(max_thematic, thematic[i]);
    max_length = std::max(max_length, length[i]);
  }

  for (std::size_t i = 0; i < stats.size(); ++i) {
    FeatureVector fv;
    fv.thematic = max_thematic > 0.0 ? thematic[i] / max_thematic : 0.0;
    fv.position = f_pos(stats[i].first_sentence_index, abstract_window);
    fv.length = max_length > 0.0 ? length[i] / max_length : 0.0;
    out[stats[i].canonical] = fv;
  }
  return out;
}

const char* label_name(Label label) {
  return label == Label::positive ? "positive" : "negative";
}

std::vector<LabeledInstance> label_instances(
    const std::string& doc_id,
    const std::map<std::string, FeatureVector>& vectors,
    const std::vector<CanonicalPhrase>& author_keys) {
  std::vector<LabeledInstance> out;
  out.reserve(vectors.size());
  for (const auto& [canonical, fv] : vectors) {
    LabeledInstance inst;
    inst.doc_id = doc_id;
    inst.canonical = canonical;
    inst.features = fv;
    inst.label = Label::negative;
    for (const CanonicalPhrase& key : author_keys) {
      if (key.canonical == canonical) {
        inst.label = Label::positive;
        break;
      }
    }
    out.push_back(std::move(inst));
  }
  return out;
}

namespace {

std::string format_row(const FeatureVector& fv) {
  return format_fixed6(fv.thematic) + "," + format_fixed6(fv.position) + "," +
         format_fixed6(fv.length);
}

Label parse_label(const std::string& s, const std::string& context) {
  if (s == "positive") return Label::positive;
  if (s == "negative") return Label::negative;
  throw ParseError(context + ": unknown class label '" + s + "'");
}

double parse_double(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw ParseError(context);
    return v;
  } catch (const ParseError&) {
    throw ParseError(context + ": bad numeric field '" + s + "'");
  } catch (const std::exception&) {
    throw ParseError(context + ": bad numeric field '" + s + "'");
  }
}

int parse_int(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw ParseError(context);
    return v;
  } catch (const ParseError&) {
    throw ParseError(context + ": bad integer field '" + s + "'");
  } catch (const std::exception&) {
    throw ParseError(context + ": bad integer field '" + s + "'");
  }
}

std::vector<std::string> split_on(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  for (;;) {
    std::size_t next = line.find(sep, pos);
    if (next == std::string::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
}

}  // namespace

std::string export_dataset(const std::vector<LabeledInstance>& instances,
                           DatasetFormat format) {
  std::string out;
  if (format == DatasetFormat::arff) {
    out += "@relation keyphrases\n\n";
    out += "@attribute f_thematic_norm numeric\n";
    out += "@attribute f_pos numeric\n";
    out += "@attribute f_plwl_norm numeric\n";
    out += "@attribute class {positive,negative}\n\n";
    out += "@data\n";
    for (const LabeledInstance& inst : instances) {
      out += format_row(inst.features);
      out.push_back(',');
      out += label_name(inst.label);
      out.push_back('\n');
    }
    return out;
  }

  out += "doc_id\tcanonical\tf_thematic_norm\tf_pos\tf_plwl_norm\tlabel\n";
  for (const LabeledInstance& inst : instances) {
    out += inst.doc_id;
    out.push_back('\t');
    out += inst.canonical;
    out.push_back('\t');
    out += format_fixed6(inst.features.thematic);
    out.push_back('\t');
    out += format_fixed6(inst.features.position);
    out.push_back('\t');
    out += format_fixed6(inst.features.length);
    out.push_back('\t');
    out += label_name(inst.label);
    out.push_back('\n');
  }
  return out;
}

std::vector<LabeledInstance> import_dataset(const std::string& text,
                                            DatasetFormat format) {
  std::vector<LabeledInstance> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  if (format == DatasetFormat::arff) {
    bool in_data = false;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '%') continue;
      if (!in_data) {
        if (line.rfind("@data", 0) == 0) in_data = true;
        continue;
      }
      std::vector<std::string> fields = split_on(line, ',');
      if (fields.size() != 4) {
        throw ParseError("arff line " + std::to_string(line_no) +
                         ": expected 4 fields, got " +
                         std::to_string(fields.size()));
      }
      const std::string context = "arff line " + std::to_string(line_no);
      LabeledInstance inst;
      inst.features.thematic = parse_double(fields[0], context);
      inst.features.position = parse_double(fields[1], context);
      inst.features.length = parse_double(fields[2], context);
      inst.label = parse_label(fields[3], context);
      out.push_back(std::move(inst));
    }
    return out;
  }

  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;  // column header
      continue;
    }
    std::vector<std::string> fields = split_on(line, '\t');
    if (fields.size() != 6) {
      throw ParseError("tsv line " + std::to_string(line_no) +
                       ": expected 6 fields, got " +
                       std::to_string(fields.size()));
    }
    const std::string context = "tsv line " + std::to_string(line_no);
    LabeledInstance inst;
    inst.doc_id = fields[0];
    inst.canonical = fields[1];
    inst.features.thematic = parse_double(fields[2], context);
    inst.features.position = parse_double(fields[3], context);
    inst.features.length = parse_double(fields[4], context);
    inst.label = parse_label(fields[5], context);
    out.push_back(std::move(inst));
  }
  return out;
}

std::string CorpusStats::serialize() const {
  std::vector<std::pair<std::string, int>> entries(document_frequency.begin(),
                                                   document_frequency.end());
  std::sort(entries.begin(), entries.end());

  std::string out = "keyex-corpus-stats v1\n";
  out += "documents " + std::to_string(n_documents) + "\n";
  out += "entries " + std::to_string(entries.size()) + "\n";
  for (const auto& [canonical, df] : entries) {
    out += canonical;
    out.push_back('\t');
    out += std::to_string(df);
    out.push_back('\n');
  }
  return out;
}

CorpusStats CorpusStats::deserialize(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "keyex-corpus-stats v1") {
    throw ParseError("corpus stats: bad or unsupported header");
  }
  CorpusStats stats;
  std::size_t expected = 0;
  if (!std::getline(in, line) || line.rfind("documents ", 0) != 0) {
    throw ParseError("corpus stats: missing document count");
  }
  stats.n_documents = parse_int(line.substr(10), "corpus stats documents");
  if (!std::getline(in, line) || line.rfind("entries ", 0) != 0) {
    throw ParseError("corpus stats: missing entry count");
  }
  expected = static_cast<std::size_t>(
      parse_int(line.substr(8), "corpus stats entries"));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError("corpus stats: malformed entry '" + line + "'");
    }
    stats.document_frequency[line.substr(0, tab)] =
        parse_int(line.substr(tab + 1), "corpus stats entry '" +
                                            line.substr(0, tab) + "'");
  }
  if (stats.document_frequency.size() != expected) {
    throw ParseError("corpus stats: truncated (expected " +
                     std::to_string(expected) + " entries, read " +
                     std::to_string(stats.document_frequency.size()) + ")");
  }
  return stats;
}

CorpusStats CorpusStats::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus stats file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str());
}

void CorpusStats::write_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write corpus stats file: " + path);
  out << serialize();
}

}  // namespace keyex
