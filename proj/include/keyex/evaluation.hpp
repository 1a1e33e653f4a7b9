#ifndef KEYEX_EVALUATION_HPP
#define KEYEX_EVALUATION_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "keyex/config.hpp"
#include "keyex/pipeline.hpp"
#include "keyex/ranking.hpp"

namespace keyex {

struct FoldSpec {
  int fold_id = 0;  // 1-based
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
};

// Seeded shuffle, then equal slicing; train and test sets are disjoint.
std::vector<FoldSpec> make_folds(std::vector<std::string> doc_ids, int folds,
                                 std::uint64_t seed);

// Size of the canonical-form set intersection.
int match_count(const std::vector<CanonicalPhrase>& extracted,
                const std::vector<CanonicalPhrase>& gold);

// precision = matches/|extracted| (0 when nothing extracted),
// recall = matches/|gold| (0 when gold is empty; such documents are
// excluded from recall averaging by cross_validate).
std::pair<double, double> precision_recall(
    const std::vector<CanonicalPhrase>& extracted,
    const std::vector<CanonicalPhrase>& gold);

struct UpperBounds {
  double max_recall = 0.0;
  double max_precision = 0.0;
};

// max_recall = coverage; max_precision at K = avg_gold * coverage / K.
UpperBounds upper_bounds(double avg_gold, double coverage, int k);

struct CorpusStatistics {
  int documents = 0;
  long total_candidates = 0;
  double mean_gold_per_doc = 0.0;
  double gold_in_text_fraction = 0.0;
  double gold_in_candidates_fraction = 0.0;
};

CorpusStatistics corpus_statistics(const std::vector<DocumentData>& docs);

// The classifier pipeline plus the two reference rankers it is compared to.
enum class ExtractorKind { mlp, thematic, random };
const char* extractor_name(ExtractorKind kind);

struct MetricRow {
  int fold = 0;
  int k = 0;
  ExtractorKind system = ExtractorKind::mlp;
  double precision = 0.0;
  double recall = 0.0;
};

struct AveragedRow {
  int k = 0;
  ExtractorKind system = ExtractorKind::mlp;
  double precision = 0.0;
  double recall = 0.0;
};

struct EvalReport {
  std::uint64_t seed = 0;
  int folds = 0;
  std::vector<int> ks;
  std::vector<MetricRow> per_fold;
  std::vector<AveragedRow> averaged;
  CorpusStatistics stats;

  const AveragedRow& averaged_row(int k, ExtractorKind system) const;
};

EvalReport cross_validate(const std::vector<DocumentData>& docs, int folds,
                          const std::vector<int>& ks, const RunConfig& config);

// Top K candidates by normalized thematic score, with the ranking module's
// tie-breakers.
std::vector<RankedPhrase> baseline_rank_thematic(
    const std::map<std::string, FeatureVector>& vectors,
    const CandidateDetails& details, int k);

// Uniform sample of K distinct candidates.
std::vector<std::string> baseline_rank_random(
    const std::vector<std::string>& candidates, int k, std::uint64_t seed);

std::string format_report_text(const EvalReport& report);
std::string format_report_tsv(const EvalReport& report);

}  // namespace keyex

#endif  // KEYEX_EVALUATION_HPP
