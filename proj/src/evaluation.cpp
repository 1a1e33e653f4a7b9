#include "keyex/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <tuple>

#include "keyex/util.hpp"

namespace keyex {

namespace {

constexpr ExtractorKind kSystems[] = {ExtractorKind::mlp,
                                      ExtractorKind::thematic,
                                      ExtractorKind::random};

bool contains_word_seq(const std::vector<std::string>& sentence,
                       const std::vector<std::string>& words) {
  if (words.empty() || words.size() > sentence.size()) return false;
  for (std::size_t off = 0; off + words.size() <= sentence.size(); ++off) {
    bool match = true;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (sentence[off + i] != words[i]) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

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

}  // namespace

std::vector<FoldSpec> make_folds(std::vector<std::string> doc_ids, int folds,
                                 std::uint64_t seed) {
  if (folds < 2) {
    throw ConfigError("cross validation needs at least 2 folds");
  }
  if (doc_ids.size() < static_cast<std::size_t>(folds)) {
    throw ConfigError("cannot split " + std::to_string(doc_ids.size()) +
                      " documents into " + std::to_string(folds) + " folds");
  }
  std::sort(doc_ids.begin(), doc_ids.end());
  std::mt19937_64 rng(seed);
  shuffle_deterministic(doc_ids, rng);

  const std::size_t n = doc_ids.size();
  std::vector<FoldSpec> out;
  out.reserve(folds);
  for (int f = 0; f < folds; ++f) {
    FoldSpec spec;
    spec.fold_id = f + 1;
    std::size_t begin = n * static_cast<std::size_t>(f) /
                        static_cast<std::size_t>(folds);
    std::size_t end = n * static_cast<std::size_t>(f + 1) /
                      static_cast<std::size_t>(folds);
    for (std::size_t i = 0; i < n; ++i) {
      (i >= begin && i < end ? spec.test_ids : spec.train_ids)
          .push_back(doc_ids[i]);
    }
    std::sort(spec.train_ids.begin(), spec.train_ids.end());
    std::sort(spec.test_ids.begin(), spec.test_ids.end());
    out.push_back(std::move(spec));
  }
  return out;
}

int match_count(const std::vector<CanonicalPhrase>& extracted,
                const std::vector<CanonicalPhrase>& gold) {
  std::set<std::string> extracted_set;
  for (const CanonicalPhrase& p : extracted) extracted_set.insert(p.canonical);
  std::set<std::string> gold_set;
  for (const CanonicalPhrase& p : gold) gold_set.insert(p.canonical);

  int matches = 0;
  for (const std::string& c : extracted_set) {
    if (gold_set.count(c)) ++matches;
  }
  return matches;
}

std::pair<double, double> precision_recall(
    const std::vector<CanonicalPhrase>& extracted,
    const std::vector<CanonicalPhrase>& gold) {
  int matches = match_count(extracted, gold);
  double precision =
      extracted.empty() ? 0.0
                        : static_cast<double>(matches) /
                              static_cast<double>(extracted.size());
  double recall = gold.empty() ? 0.0
                               : static_cast<double>(matches) /
                                     static_cast<double>(gold.size());
  return {precision, recall};
}

UpperBounds upper_bounds(double avg_gold, double coverage, int k) {
  if (coverage < 0 || coverage > 1) {
    throw ContractError("upper_bounds: coverage must lie in [0, 1]");
  }
  if (k < 1) {
    throw ContractError("upper_bounds: k must be >= 1");
  }
  UpperBounds ub;
  ub.max_recall = coverage;
  ub.max_precision = avg_gold * coverage / static_cast<double>(k);
  return ub;
}

CorpusStatistics corpus_statistics(const std::vector<DocumentData>& docs) {
  if (docs.empty()) {
    throw ContractError("corpus_statistics: empty corpus");
  }
  CorpusStatistics stats;
  stats.documents = static_cast<int>(docs.size());

  long total_gold = 0;
  long gold_in_text = 0;
  long gold_in_candidates = 0;
  for (const DocumentData& doc : docs) {
    stats.total_candidates += static_cast<long>(doc.candidates.size());
    total_gold += static_cast<long>(doc.gold.size());
    for (const CanonicalPhrase& key : doc.gold) {
      if (doc.candidates.count(key.canonical)) ++gold_in_candidates;
      std::vector<std::string> words = split_words(key.canonical);
      for (const auto& sentence : doc.sentence_words) {
        if (contains_word_seq(sentence, words)) {
          ++gold_in_text;
          break;
        }
      }
    }
  }
  stats.mean_gold_per_doc =
      static_cast<double>(total_gold) / static_cast<double>(docs.size());
  if (total_gold > 0) {
    stats.gold_in_text_fraction =
        static_cast<double>(gold_in_text) / static_cast<double>(total_gold);
    stats.gold_in_candidates_fraction =
        static_cast<double>(gold_in_candidates) /
        static_cast<double>(total_gold);
  }
  return stats;
}

const char* extractor_name(ExtractorKind kind) {
  switch (kind) {
    case ExtractorKind::mlp:
      return "mlp";
    case ExtractorKind::thematic:
      return "thematic";
    case ExtractorKind::random:
      return "random";
  }
  return "?";
}

const AveragedRow& EvalReport::averaged_row(int k, ExtractorKind system) const {
  for (const AveragedRow& row : averaged) {
    if (row.k == k && row.system == system) return row;
  }
  throw ContractError("no averaged row for k=" + std::to_string(k));
}

std::vector<RankedPhrase> baseline_rank_thematic(
    const std::map<std::string, FeatureVector>& vectors,
    const CandidateDetails& details, int k) {
  std::vector<RankedPhrase> all;
  all.reserve(vectors.size());
  std::vector<int> first;
  first.reserve(vectors.size());
  for (const auto& [canonical, fv] : vectors) {
    RankedPhrase rp;
    rp.canonical = canonical;
    rp.display = canonical;
    rp.confidence = fv.thematic;
    rp.source = RankSource::positive;
    int first_sentence = std::numeric_limits<int>::max();
    auto it = details.find(canonical);
    if (it != details.end()) {
      if (!it->second.display.empty()) rp.display = it->second.display;
      first_sentence = it->second.first_sentence_index;
    }
    all.push_back(std::move(rp));
    first.push_back(first_sentence);
  }

  std::vector<std::size_t> idx(all.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (all[a].confidence != all[b].confidence) {
      return all[a].confidence > all[b].confidence;
    }
    return std::tie(first[a], all[a].canonical) <
           std::tie(first[b], all[b].canonical);
  });

  std::vector<RankedPhrase> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(all[i]);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].rank = static_cast<int>(i) + 1;
  }
  return top_k(out, k);
}

std::vector<std::string> baseline_rank_random(
    const std::vector<std::string>& candidates, int k, std::uint64_t seed) {
  if (k < 0) {
    throw ContractError("baseline_rank_random: k must be >= 0");
  }
  std::vector<std::string> pool = candidates;
  std::sort(pool.begin(), pool.end());
  std::mt19937_64 rng(seed);
  std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k),
                                           pool.size());
  // Partial Fisher-Yates: position i draws from [i, n).
  for (std::size_t i = 0; i < take; ++i) {
    std::size_t j = i + uniform_index(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(take);
  return pool;
}

EvalReport cross_validate(const std::vector<DocumentData>& docs, int folds,
                          const std::vector<int>& ks, const RunConfig& config) {
  if (ks.empty()) {
    throw ConfigError("cross_validate: no K values given");
  }
  for (int k : ks) {
    if (k < 1) throw ConfigError("cross_validate: K values must be >= 1");
  }

  std::vector<std::string> ids;
  ids.reserve(docs.size());
  for (const DocumentData& d : docs) ids.push_back(d.doc_id);
  std::vector<FoldSpec> fold_specs = make_folds(ids, folds, config.seed);

  auto doc_by_id = [&docs](const std::string& id) -> const DocumentData& {
    for (const DocumentData& d : docs) {
      if (d.doc_id == id) return d;
    }
    throw ContractError("cross_validate: unknown doc_id '" + id + "'");
  };

  const int max_k = *std::max_element(ks.begin(), ks.end());

  EvalReport report;
  report.seed = config.seed;
  report.folds = folds;
  report.ks = ks;
  report.stats = corpus_statistics(docs);

  for (const FoldSpec& fold : fold_specs) {
    CorpusStats corpus = build_corpus_stats(docs, fold.train_ids);

    std::vector<LabeledInstance> instances;
    for (const std::string& id : fold.train_ids) {
      const DocumentData& doc = doc_by_id(id);
      auto vectors = featurize_document(doc, corpus, config.abstract_window);
      auto labeled = label_instances(doc.doc_id, vectors, doc.gold);
      instances.insert(instances.end(), labeled.begin(), labeled.end());
    }
    TrainResult trained = train(instances, config.train_config());

    // per (k, system): summed precision / recall plus divisor counts
    struct Accumulator {
      double precision_sum = 0.0;
      double recall_sum = 0.0;
      int precision_docs = 0;
      int recall_docs = 0;
    };
    std::map<std::pair<int, ExtractorKind>, Accumulator> acc;

    std::size_t doc_ordinal = 0;
    for (const std::string& id : fold.test_ids) {
      const DocumentData& doc = doc_by_id(id);
      auto vectors = featurize_document(doc, corpus, config.abstract_window);

      std::vector<Prediction> predictions = predict(trained.model, vectors);
      std::vector<RankedPhrase> mlp_ranked =
          rank_candidates(predictions, doc.details);
      std::vector<RankedPhrase> thematic_ranked =
          baseline_rank_thematic(vectors, doc.details, max_k);

      std::vector<std::string> pool;
      pool.reserve(vectors.size());
      for (const auto& [canonical, fv] : vectors) {
        (void)fv;
        pool.push_back(canonical);
      }
      std::uint64_t doc_seed = config.seed +
                               0x9E3779B97F4A7C15ull *
                                   (static_cast<std::uint64_t>(fold.fold_id) *
                                        100000ull +
                                    doc_ordinal + 1);
      std::vector<std::string> random_picked =
          baseline_rank_random(pool, max_k, doc_seed);
      ++doc_ordinal;

      auto record = [&](int k, ExtractorKind system,
                        const std::vector<CanonicalPhrase>& extracted) {
        auto [precision, recall] = precision_recall(extracted, doc.gold);
        Accumulator& a = acc[{k, system}];
        a.precision_sum += precision;
        ++a.precision_docs;
        if (!doc.gold.empty()) {
          a.recall_sum += recall;
          ++a.recall_docs;
        }
      };

      for (int k : ks) {
        std::vector<CanonicalPhrase> extracted;
        for (const RankedPhrase& rp : top_k(mlp_ranked, k)) {
          extracted.push_back({rp.display, rp.canonical});
        }
        record(k, ExtractorKind::mlp, extracted);

        extracted.clear();
        for (const RankedPhrase& rp : top_k(thematic_ranked, k)) {
          extracted.push_back({rp.display, rp.canonical});
        }
        record(k, ExtractorKind::thematic, extracted);

        extracted.clear();
        for (std::size_t i = 0;
             i < std::min<std::size_t>(random_picked.size(),
                                       static_cast<std::size_t>(k));
             ++i) {
          extracted.push_back({random_picked[i], random_picked[i]});
        }
        record(k, ExtractorKind::random, extracted);
      }
    }

    for (int k : ks) {
      for (ExtractorKind system : kSystems) {
        const Accumulator& a = acc[{k, system}];
        MetricRow row;
        row.fold = fold.fold_id;
        row.k = k;
        row.system = system;
        row.precision = a.precision_docs > 0
                            ? a.precision_sum / a.precision_docs
                            : 0.0;
        row.recall = a.recall_docs > 0 ? a.recall_sum / a.recall_docs : 0.0;
        report.per_fold.push_back(row);
      }
    }
  }

  for (int k : ks) {
    for (ExtractorKind system : kSystems) {
      AveragedRow row;
      row.k = k;
      row.system = system;
      int count = 0;
      for (const MetricRow& m : report.per_fold) {
        if (m.k == k && m.system == system) {
          row.precision += m.precision;
          row.recall += m.recall;
          ++count;
        }
      }
      if (count > 0) {
        row.precision /= count;
        row.recall /= count;
      }
      report.averaged.push_back(row);
    }
  }
  return report;
}

std::string format_report_text(const EvalReport& report) {
  std::string out;
  char buf[256];

  out += "keyphrase extraction evaluation\n";
  std::snprintf(buf, sizeof(buf), "seed=%llu folds=%d documents=%d\n",
                static_cast<unsigned long long>(report.seed), report.folds,
                report.stats.documents);
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "candidates=%ld mean_gold_per_doc=%.2f gold_in_text=%.2f "
                "gold_in_candidates=%.2f\n\n",
                report.stats.total_candidates, report.stats.mean_gold_per_doc,
                report.stats.gold_in_text_fraction,
                report.stats.gold_in_candidates_fraction);
  out += buf;

  out += "          avg precision                 avg recall\n";
  out += "K         mlp     thematic  random     mlp     thematic  random\n";
  for (int k : report.ks) {
    const AveragedRow& m = report.averaged_row(k, ExtractorKind::mlp);
    const AveragedRow& t = report.averaged_row(k, ExtractorKind::thematic);
    const AveragedRow& r = report.averaged_row(k, ExtractorKind::random);
    std::snprintf(buf, sizeof(buf),
                  "%-8d  %-8.4f%-10.4f%-9.4f  %-8.4f%-10.4f%-9.4f\n", k,
                  m.precision, t.precision, r.precision, m.recall, t.recall,
                  r.recall);
    out += buf;
  }

  out += "\nupper bounds from candidate coverage\n";
  for (int k : report.ks) {
    UpperBounds ub = upper_bounds(report.stats.mean_gold_per_doc,
                                  report.stats.gold_in_candidates_fraction, k);
    std::snprintf(buf, sizeof(buf),
                  "K=%-6d max_recall=%.4f max_precision=%.4f\n", k,
                  ub.max_recall, ub.max_precision);
    out += buf;
  }
  return out;
}

std::string format_report_tsv(const EvalReport& report) {
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "# seed=%llu folds=%d\n",
                static_cast<unsigned long long>(report.seed), report.folds);
  out += buf;
  out += "fold\tk\tsystem\tprecision\trecall\n";
  for (const MetricRow& row : report.per_fold) {
    out += std::to_string(row.fold);
    out.push_back('\t');
    out += std::to_string(row.k);
    out.push_back('\t');
    out += extractor_name(row.system);
    out.push_back('\t');
    out += format_fixed6(row.precision);
    out.push_back('\t');
    out += format_fixed6(row.recall);
    out.push_back('\n');
  }
  for (const AveragedRow& row : report.averaged) {
    out += "avg\t";
    out += std::to_string(row.k);
    out.push_back('\t');
    out += extractor_name(row.system);
    out.push_back('\t');
    out += format_fixed6(row.precision);
    out.push_back('\t');
    out += format_fixed6(row.recall);
    out.push_back('\n');
  }
  return out;
}

}  // namespace keyex
