#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "keyex/evaluation.hpp"
#include "keyex/pipeline.hpp"

using namespace keyex;

namespace {

std::vector<CanonicalPhrase> phrases(const std::vector<std::string>& surfaces,
                                     bool stem = true) {
  std::vector<CanonicalPhrase> out;
  for (const std::string& s : surfaces) out.push_back(canonicalize(s, stem));
  return out;
}

// Author keys for article 12 and the two systems' top-5 extractions.
const std::vector<std::string> kGold = {"adult immunization", "barriers",
                                        "consumer", "provider survey"};
const std::vector<std::string> kMlpTop5 = {"immunization", "adult immunization",
                                           "healthcare providers", "consumers",
                                           "barriers"};
const std::vector<std::string> kKeaTop5 = {"adult", "immunization", "vaccine",
                                           "healthcare", "barriers"};

DocumentData tiny_doc(const std::string& id,
                      const std::vector<std::string>& lines,
                      const std::string& keys) {
  PipelineOptions opts;
  std::string text;
  for (const std::string& line : lines) {
    text += line;
    text += " ";
  }
  Document doc = load_document(text, id);
  doc.author_keyphrases = load_author_keyphrases(keys, id, true);
  return process_document(doc, opts);
}

}  // namespace

TEST_CASE("match counts for the worked example") {
  CHECK(match_count(phrases(kMlpTop5), phrases(kGold)) == 3);
  CHECK(match_count(phrases(kKeaTop5), phrases(kGold)) == 1);
  CHECK(match_count({}, phrases(kGold)) == 0);

  // without stemming, "consumers" no longer matches "consumer"
  CHECK(match_count(phrases(kMlpTop5, false), phrases(kGold, false)) == 2);
}

TEST_CASE("precision and recall for the worked example") {
  auto [p1, r1] = precision_recall(phrases(kMlpTop5), phrases(kGold));
  CHECK(p1 == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(r1 == doctest::Approx(0.75).epsilon(1e-12));

  auto [p2, r2] = precision_recall(phrases(kKeaTop5), phrases(kGold));
  CHECK(p2 == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(r2 == doctest::Approx(0.25).epsilon(1e-12));

  auto [p3, r3] = precision_recall(phrases(kGold), phrases(kGold));
  CHECK(p3 == 1.0);
  CHECK(r3 == 1.0);

  auto [p4, r4] = precision_recall({}, phrases(kGold));
  CHECK(p4 == 0.0);
  CHECK(r4 == 0.0);
}

TEST_CASE("matched counts divide back out to integers") {
  std::mt19937 rng(3);
  const char* pool[] = {"alpha", "beta", "gamma", "delta", "epsilon",
                        "zeta",  "eta",  "theta", "iota",  "kappa"};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> ex, gold;
    std::set<std::string> seen_ex, seen_gold;
    int ne = static_cast<int>(rng() % 8);
    int ng = static_cast<int>(rng() % 8);
    for (int i = 0; i < ne; ++i) {
      if (seen_ex.insert(pool[rng() % 10]).second) {
        ex.push_back(*seen_ex.rbegin());
      }
    }
    for (int i = 0; i < ng; ++i) {
      if (seen_gold.insert(pool[rng() % 10]).second) {
        gold.push_back(*seen_gold.rbegin());
      }
    }
    auto pe = phrases(ex);
    auto pg = phrases(gold);
    int matches = match_count(pe, pg);
    auto [precision, recall] = precision_recall(pe, pg);
    if (!pe.empty()) {
      CHECK(precision * static_cast<double>(pe.size()) ==
            doctest::Approx(matches).epsilon(1e-9));
    }
    if (!pg.empty()) {
      CHECK(recall * static_cast<double>(pg.size()) ==
            doctest::Approx(matches).epsilon(1e-9));
    }
  }
}

TEST_CASE("upper bounds reproduce the corpus analysis") {
  UpperBounds a = upper_bounds(4.90, 0.72, 10);
  CHECK(a.max_recall == doctest::Approx(0.72).epsilon(1e-12));
  CHECK(a.max_precision == doctest::Approx(0.3528).epsilon(1e-12));

  UpperBounds b = upper_bounds(4.90, 0.88, 10);
  CHECK(b.max_recall == doctest::Approx(0.88).epsilon(1e-12));
  CHECK(b.max_precision == doctest::Approx(0.4312).epsilon(1e-12));

  UpperBounds zero = upper_bounds(4.90, 0.0, 10);
  CHECK(zero.max_recall == 0.0);
  CHECK(zero.max_precision == 0.0);

  CHECK_THROWS_AS(upper_bounds(4.9, 1.5, 10), ContractError);
  CHECK_THROWS_AS(upper_bounds(4.9, 0.5, 0), ContractError);
}

TEST_CASE("fold splitting is disjoint, seeded and sliced") {
  std::vector<std::string> ids;
  for (int i = 0; i < 150; ++i) ids.push_back("doc" + std::to_string(i));

  auto folds = make_folds(ids, 3, 9);
  REQUIRE(folds.size() == 3);
  std::set<std::string> all_test;
  for (const FoldSpec& f : folds) {
    CHECK(f.train_ids.size() == 100);
    CHECK(f.test_ids.size() == 50);
    for (const std::string& id : f.test_ids) {
      CHECK(all_test.insert(id).second);  // each doc tested exactly once
      CHECK_FALSE(std::binary_search(f.train_ids.begin(), f.train_ids.end(),
                                     id) == true);
    }
  }
  CHECK(all_test.size() == 150);

  std::vector<std::string> sixty(ids.begin(), ids.begin() + 60);
  auto small = make_folds(sixty, 3, 9);
  for (const FoldSpec& f : small) {
    CHECK(f.train_ids.size() == 40);
    CHECK(f.test_ids.size() == 20);
  }

  auto again = make_folds(ids, 3, 9);
  for (int f = 0; f < 3; ++f) {
    CHECK(again[f].test_ids == folds[f].test_ids);
  }
  auto other_seed = make_folds(ids, 3, 10);
  CHECK(other_seed[0].test_ids != folds[0].test_ids);

  std::vector<std::string> four(ids.begin(), ids.begin() + 4);
  auto halves = make_folds(four, 2, 1);
  CHECK(halves[0].test_ids.size() == 2);
  CHECK(halves[0].train_ids.size() == 2);

  CHECK_THROWS_AS(make_folds(four, 5, 1), ConfigError);
  CHECK_THROWS_AS(make_folds(ids, 1, 1), ConfigError);
}

TEST_CASE("corpus statistics report gold coverage") {
  // both gold keys are chunkable noun phrases
  DocumentData covered = tiny_doc(
      "a",
      {"The adult immunization improves the care.",
       "Barriers are described there."},
      "adult immunization\nbarriers");
  // "of" breaks 'rate of barriers' into two phrases, so this key is missed
  DocumentData half = tiny_doc(
      "b",
      {"The rate of barriers is low.",
       "The adult immunization improves the care."},
      "rate of barriers\nadult immunization");

  CorpusStatistics only_covered = corpus_statistics({covered});
  CHECK(only_covered.documents == 1);
  CHECK(only_covered.mean_gold_per_doc == 2.0);
  CHECK(only_covered.gold_in_candidates_fraction == 1.0);
  CHECK(only_covered.gold_in_text_fraction == 1.0);

  CorpusStatistics one_of_two = corpus_statistics({half});
  CHECK(one_of_two.gold_in_candidates_fraction ==
        doctest::Approx(0.5).epsilon(1e-12));

  CorpusStatistics mixed = corpus_statistics({covered, half});
  CHECK(mixed.documents == 2);
  CHECK(mixed.gold_in_candidates_fraction ==
        doctest::Approx(0.75).epsilon(1e-12));
  // "rate of barriers" still appears verbatim in the text
  CHECK(mixed.gold_in_text_fraction == 1.0);

  CHECK_THROWS_AS(corpus_statistics({}), ContractError);
}

TEST_CASE("thematic baseline ranks by normalized score") {
  std::map<std::string, FeatureVector> vectors;
  vectors["strong"] = {1.0, 0.2, 0.7};
  vectors["weak"] = {0.5, 0.9, 0.9};
  CandidateDetails details;
  details["strong"] = {"Strong", 5};
  details["weak"] = {"Weak", 1};

  auto top1 = baseline_rank_thematic(vectors, details, 1);
  REQUIRE(top1.size() == 1);
  CHECK(top1[0].canonical == "strong");

  auto all = baseline_rank_thematic(vectors, details, 10);
  CHECK(all.size() == 2);

  // ties order by first occurrence then canonical
  vectors["strong"] = {0.5, 0.2, 0.7};
  auto tied = baseline_rank_thematic(vectors, details, 2);
  REQUIRE(tied.size() == 2);
  CHECK(tied[0].canonical == "weak");    // sentence 1 beats sentence 5
  CHECK(tied[1].canonical == "strong");
}

TEST_CASE("random baseline samples without replacement") {
  std::vector<std::string> pool = {"a", "b", "c", "d", "e", "f"};
  auto picked = baseline_rank_random(pool, 4, 11);
  CHECK(picked.size() == 4);
  std::set<std::string> unique(picked.begin(), picked.end());
  CHECK(unique.size() == 4);
  for (const std::string& p : picked) {
    CHECK(std::find(pool.begin(), pool.end(), p) != pool.end());
  }

  CHECK(baseline_rank_random(pool, 0, 11).empty());
  CHECK(baseline_rank_random(pool, 99, 11).size() == pool.size());
  CHECK(baseline_rank_random(pool, 4, 11) == picked);  // seeded
}

TEST_CASE("documents without gold keys are excluded from recall") {
  // One document carries gold keys, the other none. With 2 folds of one
  // test document each, the per-fold rows expose the per-document values:
  // the fold testing the goldless document must report recall exactly 0.
  DocumentData with_gold = tiny_doc(
      "a",
      {"The thermal reactor improves the care.",
       "The thermal reactor is described there.",
       "The optical membrane contains a polymer."},
      "thermal reactor\n");
  DocumentData without_gold = tiny_doc(
      "b",
      {"The magnetic catalyst improves the care.",
       "The kinetic lattice is described there."},
      "");
  REQUIRE(without_gold.gold.empty());

  RunConfig config;
  config.seed = 8;
  config.epochs = 60;
  EvalReport report =
      cross_validate({with_gold, without_gold}, 2, {2}, config);

  int zero_recall_folds = 0;
  for (const MetricRow& row : report.per_fold) {
    if (row.system != ExtractorKind::mlp) continue;
    CHECK(std::isfinite(row.recall));
    CHECK(std::isfinite(row.precision));
    if (row.recall == 0.0) ++zero_recall_folds;
  }
  CHECK(zero_recall_folds >= 1);
  CHECK(report.stats.mean_gold_per_doc == doctest::Approx(0.5));
}

TEST_CASE("cross validation runs the full pipeline deterministically") {
  // Small corpus assembled from tiny documents with planted keys.
  std::vector<DocumentData> docs;
  const char* adjs[] = {"thermal", "optical", "chemical", "magnetic",
                        "seismic", "kinetic"};
  const char* nouns[] = {"reactor", "membrane", "lattice", "vortex",
                         "polymer", "catalyst"};
  for (int d = 0; d < 6; ++d) {
    std::string gold = std::string(adjs[d]) + " " + nouns[d];
    std::string other = std::string(adjs[(d + 1) % 6]) + " " +
                        nouns[(d + 2) % 6];
    std::vector<std::string> lines = {
        "The " + gold + " is described in the " + other + ".",
        "The " + gold + " improves the design.",
        "The " + gold + " depends on the setup.",
        "The budget affects the outcome.",
    };
    docs.push_back(tiny_doc("doc" + std::to_string(d), lines, gold + "\n"));
  }

  RunConfig config;
  config.seed = 13;
  config.epochs = 120;
  EvalReport report = cross_validate(docs, 3, {1, 2}, config);

  CHECK(report.folds == 3);
  REQUIRE(report.ks == std::vector<int>{1, 2});
  CHECK(report.per_fold.size() == 3 * 2 * 3);  // folds x ks x systems
  CHECK(report.averaged.size() == 2 * 3);

  for (const MetricRow& row : report.per_fold) {
    CHECK(row.precision >= 0.0);
    CHECK(row.precision <= 1.0);
    CHECK(row.recall >= 0.0);
    CHECK(row.recall <= 1.0);
  }

  // averaged metrics lie within the per-fold envelope
  for (const AveragedRow& avg : report.averaged) {
    double lo = 1.0, hi = 0.0, rlo = 1.0, rhi = 0.0;
    for (const MetricRow& row : report.per_fold) {
      if (row.k != avg.k || row.system != avg.system) continue;
      lo = std::min(lo, row.precision);
      hi = std::max(hi, row.precision);
      rlo = std::min(rlo, row.recall);
      rhi = std::max(rhi, row.recall);
    }
    CHECK(avg.precision >= lo - 1e-12);
    CHECK(avg.precision <= hi + 1e-12);
    CHECK(avg.recall >= rlo - 1e-12);
    CHECK(avg.recall <= rhi + 1e-12);
  }

  // recall at the larger K never drops below recall at the smaller K
  for (ExtractorKind system :
       {ExtractorKind::mlp, ExtractorKind::thematic, ExtractorKind::random}) {
    CHECK(report.averaged_row(2, system).recall + 1e-12 >=
          report.averaged_row(1, system).recall);
  }

  EvalReport again = cross_validate(docs, 3, {1, 2}, config);
  CHECK(format_report_tsv(again) == format_report_tsv(report));
  CHECK(format_report_text(again) == format_report_text(report));

  RunConfig reseeded = config;
  reseeded.seed = 14;
  EvalReport other = cross_validate(docs, 3, {1, 2}, reseeded);
  CHECK(format_report_tsv(other) != format_report_tsv(report));

  CHECK_THROWS_AS(cross_validate(docs, 7, {1}, config), ConfigError);
  CHECK_THROWS_AS(cross_validate(docs, 3, {}, config), ConfigError);
  CHECK_THROWS_AS(cross_validate(docs, 3, {0}, config), ConfigError);
}
