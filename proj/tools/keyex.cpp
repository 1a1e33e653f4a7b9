// keyex — supervised keyphrase extraction pipeline:
// tag -> chunk -> featurize -> train -> extract, plus cross-validated
// evaluation.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "keyex/config.hpp"
#include "keyex/errors.hpp"
#include "keyex/evaluation.hpp"
#include "keyex/mlp.hpp"
#include "keyex/pipeline.hpp"
#include "keyex/ranking.hpp"
#include "keyex/util.hpp"

namespace fs = std::filesystem;
using namespace keyex;

namespace {

// Exit codes: 1 degraded run, 2 I/O, 3 parse, 4 configuration, 5 contract.
constexpr int kExitDegenerate = 1;
constexpr int kExitIo = 2;
constexpr int kExitParse = 3;
constexpr int kExitConfig = 4;
constexpr int kExitContract = 5;

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::io:
      return kExitIo;
    case ErrorKind::parse:
      return kExitParse;
    case ErrorKind::config:
      return kExitConfig;
    case ErrorKind::contract:
      return kExitContract;
  }
  return 1;
}

struct CliState {
  RunConfig config;
  std::string k_spec;  // raw --k value; empty means not given
  std::string lexicon_path;
  std::string format = "text";  // evaluate stdout format
  TagLexicon lexicon;  // loaded copy when --lexicon is used

  // per-command paths
  std::vector<std::string> inputs;
  std::string corpus_dir;
  std::string out_path;
  std::string out_dir;
  std::string model_path;
  std::string stats_path;
  std::string arff_path;
  std::string out_prefix;
  std::string predictions_path;

  PipelineOptions pipeline_options() {
    PipelineOptions opts = PipelineOptions::from(config);
    if (!lexicon_path.empty()) {
      lexicon = TagLexicon::from_file(lexicon_path);
      opts.lexicon = &lexicon;
    }
    return opts;
  }

  std::string seed_header() const {
    return "# seed=" + std::to_string(config.seed) + "\n";
  }
};

std::vector<int> parse_k_list(const std::string& spec) {
  std::vector<int> ks;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      ks.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ConfigError("bad K value '" + item + "' in '" + spec + "'");
    }
  }
  if (ks.empty()) throw ConfigError("no K values in '" + spec + "'");
  return ks;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::fputs(content.c_str(), stdout);
  } else {
    write_file(out_path, content);
  }
}

std::string doc_id_of(const std::string& path) {
  return fs::path(path).stem().string();
}

// tag: raw text in, one surface/TAG line per sentence out. With --pretagged
// the input is only validated and re-emitted in canonical form.
int run_tag(CliState& state) {
  PipelineOptions opts = state.pipeline_options();
  const TagLexicon& lexicon =
      opts.lexicon ? *opts.lexicon : TagLexicon::builtin();

  for (const std::string& input : state.inputs) {
    const std::string doc_id = doc_id_of(input);
    std::string content;
    if (state.config.pretagged) {
      for (const TaggedSentence& ts : parse_tagged_document(
               read_file(input), doc_id, opts.unknown_tags)) {
        content += format_tagged(ts);
        content.push_back('\n');
      }
    } else {
      LoadOptions load_opts;
      load_opts.title_line = state.config.title_line;
      Document doc = load_document(read_file(input), doc_id, load_opts);
      for (const Sentence& s : doc.sentences) {
        content += format_tagged(tag_sentence(s, lexicon, doc_id));
        content.push_back('\n');
      }
    }
    if (state.out_dir.empty()) {
      std::fputs(content.c_str(), stdout);
    } else {
      fs::create_directories(state.out_dir);
      write_file((fs::path(state.out_dir) / (doc_id + ".tag")).string(),
                 content);
    }
  }
  return 0;
}

int run_chunk(CliState& state) {
  PipelineOptions opts = state.pipeline_options();
  const TagLexicon& lexicon =
      opts.lexicon ? *opts.lexicon : TagLexicon::builtin();
  ChunkOptions chunk_opts;
  chunk_opts.stem = state.config.stem;

  std::string out = state.seed_header();
  out += "doc_id\tsentence_index\tphrase_index\tsurface\n";
  for (const std::string& input : state.inputs) {
    const std::string doc_id = doc_id_of(input);
    std::vector<TaggedSentence> tagged;
    if (state.config.pretagged) {
      tagged =
          parse_tagged_document(read_file(input), doc_id, opts.unknown_tags);
    } else {
      LoadOptions load_opts;
      load_opts.title_line = state.config.title_line;
      Document doc = load_document(read_file(input), doc_id, load_opts);
      for (const Sentence& s : doc.sentences) {
        tagged.push_back(tag_sentence(s, lexicon, doc_id));
      }
    }
    for (const TaggedSentence& ts : tagged) {
      for (const NounPhraseOccurrence& occ :
           extract_noun_phrases(ts, chunk_opts)) {
        out += occ.doc_id;
        out.push_back('\t');
        out += std::to_string(occ.sentence_index);
        out.push_back('\t');
        out += std::to_string(occ.phrase_index);
        out.push_back('\t');
        out += occ.surface;
        out.push_back('\n');
      }
    }
  }
  emit(state.out_path, out);
  return 0;
}

struct FeaturizedCorpus {
  std::vector<DocumentData> docs;
  CorpusStats stats;
  std::vector<LabeledInstance> instances;
  long positives = 0;
};

FeaturizedCorpus featurize_corpus(CliState& state) {
  FeaturizedCorpus result;
  result.docs = load_corpus_dir(state.corpus_dir, state.pipeline_options());
  if (result.docs.empty()) {
    throw ConfigError("no documents found in corpus directory: " +
                      state.corpus_dir);
  }
  std::vector<std::string> all_ids;
  for (const DocumentData& d : result.docs) all_ids.push_back(d.doc_id);
  result.stats = build_corpus_stats(result.docs, all_ids);

  for (const DocumentData& doc : result.docs) {
    auto vectors = featurize_document(doc, result.stats,
                                      state.config.abstract_window);
    auto labeled = label_instances(doc.doc_id, vectors, doc.gold);
    result.instances.insert(result.instances.end(), labeled.begin(),
                            labeled.end());
  }
  for (const LabeledInstance& inst : result.instances) {
    if (inst.label == Label::positive) ++result.positives;
  }
  return result;
}

int run_featurize(CliState& state) {
  FeaturizedCorpus corpus = featurize_corpus(state);

  std::string out = state.seed_header();
  out += export_dataset(corpus.instances, DatasetFormat::tsv);
  emit(state.out_path, out);

  if (!state.arff_path.empty()) {
    write_file(state.arff_path,
               export_dataset(corpus.instances, DatasetFormat::arff));
  }
  if (!state.stats_path.empty()) {
    corpus.stats.write_file(state.stats_path);
  }
  return 0;
}

int run_train(CliState& state) {
  FeaturizedCorpus corpus = featurize_corpus(state);

  bool any_gold = false;
  for (const DocumentData& doc : corpus.docs) {
    if (!doc.gold.empty()) any_gold = true;
  }
  if (!any_gold) {
    throw ConfigError("no gold keyphrases found; expected <doc_id>.keys "
                      "sidecars in " + state.corpus_dir);
  }

  if (state.arff_path.empty()) {
    state.arff_path = state.model_path + ".arff";
  }
  write_file(state.arff_path,
             export_dataset(corpus.instances, DatasetFormat::arff));

  TrainResult result = train(corpus.instances, state.config.train_config());
  save_model_file(result.model, state.model_path);
  if (state.stats_path.empty()) {
    state.stats_path = state.model_path + ".stats";
  }
  corpus.stats.write_file(state.stats_path);

  const TrainHistory& history = result.history;
  std::printf("# seed=%llu\n",
              static_cast<unsigned long long>(state.config.seed));
  std::printf("documents %zu\n", corpus.docs.size());
  std::printf("instances %zu (positive %ld, negative %zu)\n",
              corpus.instances.size(), corpus.positives,
              corpus.instances.size() - corpus.positives);
  std::printf("trained positives=%d negatives=%d epochs=%d%s\n",
              history.train_positives, history.train_negatives,
              history.epochs_run,
              history.early_stopped ? " (early stop)" : "");
  if (!history.training_error.empty()) {
    std::printf("final training error %.6f\n", history.training_error.back());
  }
  std::printf("model %s\nstats %s\narff %s\n", state.model_path.c_str(),
              state.stats_path.c_str(), state.arff_path.c_str());
  for (const std::string& warning : history.warnings) {
    std::fprintf(stderr, "warning: %s\n", warning.c_str());
  }
  if (corpus.positives == 0) {
    std::fprintf(stderr,
                 "warning: training corpus has no positive instances\n");
    return kExitDegenerate;
  }
  return 0;
}

int run_extract(CliState& state) {
  MLPModel model = load_model_file(state.model_path);
  CorpusStats stats = CorpusStats::from_file(state.stats_path);

  PipelineOptions opts = state.pipeline_options();
  const std::string& input = state.inputs.front();
  const std::string doc_id = doc_id_of(input);

  DocumentData doc;
  if (state.config.pretagged) {
    doc = process_tagged_document(
        doc_id,
        parse_tagged_document(read_file(input), doc_id, opts.unknown_tags),
        {}, opts);
  } else {
    LoadOptions load_opts;
    load_opts.title_line = state.config.title_line;
    doc = process_document(load_document(read_file(input), doc_id, load_opts),
                           opts);
  }

  auto vectors = featurize_document(doc, stats, state.config.abstract_window);
  std::vector<Prediction> predictions = predict(model, vectors);
  auto ranked = top_k(rank_candidates(predictions, doc.details),
                      state.k_spec.empty() ? state.config.k
                                           : parse_k_list(state.k_spec)[0]);

  if (!state.predictions_path.empty()) {
    std::string table = state.seed_header();
    table += "doc_id\tcanonical\tpredicted_label\tp_pos\tp_neg\n";
    for (const Prediction& p : predictions) {
      table += doc_id;
      table.push_back('\t');
      table += p.canonical;
      table.push_back('\t');
      table += label_name(p.predicted_label);
      table.push_back('\t');
      table += format_fixed6(p.p_pos);
      table.push_back('\t');
      table += format_fixed6(p.p_neg);
      table.push_back('\n');
    }
    write_file(state.predictions_path, table);
  }

  std::string rows;
  for (const RankedPhrase& rp : ranked) {
    rows += std::to_string(rp.rank);
    rows.push_back('\t');
    rows += rp.display;
    rows.push_back('\t');
    rows += rank_source_name(rp.source);
    rows.push_back('\t');
    rows += format_fixed6(rp.confidence);
    rows.push_back('\n');
  }
  if (state.out_path.empty()) {
    std::fputs(rows.c_str(), stdout);
  } else {
    write_file(state.out_path,
               state.seed_header() + "rank\tphrase\tsource\tconfidence\n" +
                   rows);
  }
  return 0;
}

int run_evaluate(CliState& state) {
  std::vector<DocumentData> docs =
      load_corpus_dir(state.corpus_dir, state.pipeline_options());
  if (docs.empty()) {
    throw ConfigError("no documents found in corpus directory: " +
                      state.corpus_dir);
  }

  std::vector<int> ks = {5, 10, 15};
  if (!state.k_spec.empty()) ks = parse_k_list(state.k_spec);

  EvalReport report =
      cross_validate(docs, state.config.folds, ks, state.config);

  std::string text = format_report_text(report);
  std::string tsv = format_report_tsv(report);
  std::fputs(state.format == "tsv" ? tsv.c_str() : text.c_str(), stdout);
  if (!state.out_prefix.empty()) {
    write_file(state.out_prefix + ".txt", text);
    write_file(state.out_prefix + ".tsv", tsv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CliState state;

  CLI::App app{"Keyphrase extraction with a noun-phrase chunker and an MLP "
               "classifier"};
  app.set_config("--config", "", "key=value configuration file");
  app.require_subcommand(1);

  RunConfig& cfg = state.config;
  app.add_option("--seed", cfg.seed, "RNG seed for all seeded steps");
  app.add_flag("--stem,!--no-stem", cfg.stem,
               "stem canonical forms when matching (default on)");
  app.add_option("--abstract-sentences", cfg.abstract_window,
                 "sentence window with a nonzero position score");
  app.add_option("--k", state.k_spec,
                 "keyphrases to extract; evaluate accepts a comma list");
  app.add_option("--hidden", cfg.hidden_units, "hidden units");
  app.add_option("--epochs", cfg.epochs, "training epochs");
  app.add_option("--lr", cfg.learning_rate, "learning rate");
  app.add_option("--momentum", cfg.momentum, "momentum term");
  app.add_option("--validation-threshold", cfg.validation_threshold,
                 "non-improving epochs before early stop");
  app.add_option("--validation-fraction", cfg.validation_fraction,
                 "stratified holdout fraction (0 disables)");
  app.add_option("--folds", cfg.folds, "cross-validation folds");
  app.add_option("--negative-downsample", cfg.negative_downsample,
                 "cap negatives at ratio * positives (0 keeps all)");
  app.add_option("--jobs", cfg.jobs, "parallel workers for corpus loading");
  app.add_flag("--pretagged", cfg.pretagged,
               "inputs are surface/TAG lines, one sentence per line");
  app.add_flag("--reject-unknown-tags", cfg.reject_unknown_tags,
               "fail on tags outside the inventory instead of passing them "
               "through");
  app.add_flag("--title-line", cfg.title_line,
               "treat the first non-empty line as sentence 1");
  app.add_option("--lexicon", state.lexicon_path, "tagger lexicon file");

  CLI::App* tag = app.add_subcommand("tag", "POS-tag raw text documents");
  tag->add_option("inputs", state.inputs, "document files")
      ->required()
      ->expected(-1);
  tag->add_option("--out-dir", state.out_dir, "write <doc_id>.tag files here");

  CLI::App* chunk =
      app.add_subcommand("chunk", "extract noun phrases as a TSV table");
  chunk->add_option("inputs", state.inputs, "document files")
      ->required()
      ->expected(-1);
  chunk->add_option("--out", state.out_path, "output TSV path (default stdout)");

  CLI::App* featurize = app.add_subcommand(
      "featurize", "compute labeled feature vectors for a corpus");
  featurize->add_option("--corpus", state.corpus_dir, "corpus directory")
      ->required();
  featurize->add_option("--out", state.out_path, "feature TSV path");
  featurize->add_option("--arff", state.arff_path, "also write an ARFF file");
  featurize->add_option("--stats", state.stats_path,
                        "also write corpus statistics");

  CLI::App* train_cmd = app.add_subcommand(
      "train", "train the classifier on a corpus with .keys sidecars");
  train_cmd->add_option("--corpus", state.corpus_dir, "corpus directory")
      ->required();
  train_cmd->add_option("--model", state.model_path, "model output path")
      ->required();
  train_cmd->add_option("--stats", state.stats_path,
                        "corpus stats output (default <model>.stats)");
  train_cmd->add_option("--arff", state.arff_path,
                        "ARFF dataset output (default <model>.arff)");

  CLI::App* extract = app.add_subcommand(
      "extract", "rank and select top-K keyphrases from one document");
  extract->add_option("--model", state.model_path, "trained model file")
      ->required();
  extract->add_option("--stats", state.stats_path, "corpus stats file")
      ->required();
  extract->add_option("document", state.inputs, "document file")
      ->required()
      ->expected(1);
  extract->add_option("--out", state.out_path,
                      "output TSV path (default stdout, no header)");
  extract->add_option("--predictions", state.predictions_path,
                      "also write the raw classifier decisions as TSV");

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "cross-validated precision/recall against author keys");
  evaluate->add_option("--corpus", state.corpus_dir, "corpus directory")
      ->required();
  evaluate->add_option("--out-prefix", state.out_prefix,
                       "write <prefix>.txt and <prefix>.tsv reports");
  evaluate
      ->add_option("--format", state.format, "stdout report format")
      ->check(CLI::IsMember({"text", "tsv"}));

  for (CLI::App* sub : {tag, chunk, featurize, train_cmd, extract, evaluate}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    validate(state.config);
    if (tag->parsed()) return run_tag(state);
    if (chunk->parsed()) return run_chunk(state);
    if (featurize->parsed()) return run_featurize(state);
    if (train_cmd->parsed()) return run_train(state);
    if (extract->parsed()) return run_extract(state);
    if (evaluate->parsed()) return run_evaluate(state);
  } catch (const Error& e) {
    std::fprintf(stderr, "keyex: %s\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "keyex: %s\n", e.what());
    return 1;
  }
  return 0;
}
