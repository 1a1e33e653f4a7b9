#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "keyex/ranking.hpp"
#include "keyex/util.hpp"

using namespace keyex;

namespace {

Prediction make_prediction(const std::string& canonical, Label label,
                           double p_pos) {
  Prediction p;
  p.canonical = canonical;
  p.predicted_label = label;
  p.p_pos = p_pos;
  p.p_neg = 1.0 - p_pos;
  return p;
}

std::vector<Prediction> random_predictions(std::mt19937_64& rng, int count) {
  std::vector<Prediction> out;
  for (int i = 0; i < count; ++i) {
    double p_pos = uniform_unit(rng);
    if (rng() % 5 == 0) p_pos = 0.5;  // force some ties
    Label label = rng() % 2 ? Label::positive : Label::negative;
    out.push_back(make_prediction("c" + std::to_string(i), label, p_pos));
  }
  return out;
}

}  // namespace

TEST_CASE("positives precede negatives, each block ordered") {
  std::vector<Prediction> preds = {
      make_prediction("A", Label::positive, 0.9),
      make_prediction("C", Label::positive, 0.7),
      make_prediction("B", Label::negative, 0.4),  // p_neg = 0.6
      make_prediction("D", Label::negative, 0.2),  // p_neg = 0.8
  };
  auto ranked = rank_candidates(preds);
  REQUIRE(ranked.size() == 4);
  CHECK(ranked[0].canonical == "A");
  CHECK(ranked[1].canonical == "C");
  CHECK(ranked[2].canonical == "B");
  CHECK(ranked[3].canonical == "D");
  CHECK(ranked[0].source == RankSource::positive);
  CHECK(ranked[2].source == RankSource::negative_fallback);
  CHECK(ranked[0].confidence == 0.9);
  CHECK(ranked[2].confidence == doctest::Approx(0.6));
  for (int i = 0; i < 4; ++i) CHECK(ranked[i].rank == i + 1);
}

TEST_CASE("all-positive input is a pure descending sort") {
  std::vector<Prediction> preds = {
      make_prediction("x", Label::positive, 0.2),
      make_prediction("y", Label::positive, 0.8),
      make_prediction("z", Label::positive, 0.5),
  };
  auto ranked = rank_candidates(preds);
  REQUIRE(ranked.size() == 3);
  CHECK(ranked[0].canonical == "y");
  CHECK(ranked[1].canonical == "z");
  CHECK(ranked[2].canonical == "x");
}

TEST_CASE("empty input and contract checks") {
  CHECK(rank_candidates({}).empty());

  Prediction bad = make_prediction("bad", Label::positive, 0.9);
  bad.p_neg = 0.2;  // sums to 1.1
  CHECK_THROWS_AS(rank_candidates({bad}), ContractError);
}

TEST_CASE("ties break on first occurrence, then canonical") {
  CandidateDetails details;
  details["beta"] = {"Beta", 3};
  details["alpha"] = {"Alpha", 7};
  details["gamma"] = {"Gamma", 3};

  std::vector<Prediction> preds = {
      make_prediction("alpha", Label::positive, 0.5),
      make_prediction("beta", Label::positive, 0.5),
      make_prediction("gamma", Label::positive, 0.5),
  };
  auto ranked = rank_candidates(preds, details);
  REQUIRE(ranked.size() == 3);
  CHECK(ranked[0].canonical == "beta");   // sentence 3, before gamma
  CHECK(ranked[1].canonical == "gamma");  // sentence 3, after beta
  CHECK(ranked[2].canonical == "alpha");  // sentence 7
  CHECK(ranked[0].display == "Beta");
}

TEST_CASE("top_k takes the ranked prefix, negatives filling up") {
  std::vector<Prediction> preds;
  for (int i = 0; i < 3; ++i) {
    preds.push_back(
        make_prediction("pos" + std::to_string(i), Label::positive,
                        0.9 - 0.1 * i));
  }
  for (int i = 0; i < 4; ++i) {
    preds.push_back(
        make_prediction("neg" + std::to_string(i), Label::negative,
                        0.4 - 0.1 * i));
  }
  auto ranked = rank_candidates(preds);
  auto top5 = top_k(ranked, 5);
  REQUIRE(top5.size() == 5);
  CHECK(top5[0].source == RankSource::positive);
  CHECK(top5[1].source == RankSource::positive);
  CHECK(top5[2].source == RankSource::positive);
  CHECK(top5[3].source == RankSource::negative_fallback);
  CHECK(top5[4].source == RankSource::negative_fallback);

  CHECK(top_k(ranked, 0).empty());
  CHECK(top_k(ranked, 100).size() == ranked.size());
  CHECK_THROWS_AS(top_k(ranked, -1), ContractError);
}

TEST_CASE("ranking properties hold over randomized prediction sets") {
  std::mt19937_64 rng(2025);
  for (int trial = 0; trial < 1000; ++trial) {
    auto preds = random_predictions(rng, static_cast<int>(rng() % 20));
    auto ranked = rank_candidates(preds);

    REQUIRE(ranked.size() == preds.size());

    // ranks contiguous; block order; monotone confidence inside blocks
    bool seen_negative = false;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      CHECK(ranked[i].rank == static_cast<int>(i) + 1);
      if (ranked[i].source == RankSource::negative_fallback) {
        seen_negative = true;
      } else {
        CHECK_FALSE(seen_negative);  // no positive after a negative
      }
      if (i > 0 && ranked[i].source == ranked[i - 1].source) {
        if (ranked[i].source == RankSource::positive) {
          CHECK(ranked[i - 1].confidence >= ranked[i].confidence);
        } else {
          CHECK(ranked[i - 1].confidence <= ranked[i].confidence);
        }
      }
    }

    // permutation invariance
    auto shuffled = preds;
    shuffle_deterministic(shuffled, rng);
    auto again = rank_candidates(shuffled);
    REQUIRE(again.size() == ranked.size());
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      CHECK(again[i].canonical == ranked[i].canonical);
      CHECK(again[i].confidence == ranked[i].confidence);
      CHECK(again[i].source == ranked[i].source);
    }

    // top_k(K1) is a prefix of top_k(K2) for K1 <= K2
    int k1 = static_cast<int>(rng() % (ranked.size() + 1));
    int k2 = k1 + static_cast<int>(rng() % (ranked.size() + 1 - k1));
    auto short_list = top_k(ranked, k1);
    auto long_list = top_k(ranked, k2);
    REQUIRE(short_list.size() <= long_list.size());
    for (std::size_t i = 0; i < short_list.size(); ++i) {
      CHECK(short_list[i].canonical == long_list[i].canonical);
    }
  }
}
