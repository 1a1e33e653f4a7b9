#include "keyex/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace keyex {

const char* rank_source_name(RankSource source) {
  return source == RankSource::positive ? "positive" : "negative-fallback";
}

std::vector<RankedPhrase> rank_candidates(
    const std::vector<Prediction>& predictions,
    const CandidateDetails& details) {
  std::vector<RankedPhrase> positives;
  std::vector<RankedPhrase> negatives;
  std::vector<int> pos_first, neg_first;

  for (const Prediction& p : predictions) {
    if (std::fabs(p.p_pos + p.p_neg - 1.0) > 1e-9) {
      throw ContractError("rank_candidates: probabilities for '" +
                          p.canonical + "' do not sum to 1");
    }
    RankedPhrase rp;
    rp.canonical = p.canonical;
    rp.display = p.canonical;
    int first_sentence = std::numeric_limits<int>::max();
    auto it = details.find(p.canonical);
    if (it != details.end()) {
      if (!it->second.display.empty()) rp.display = it->second.display;
      first_sentence = it->second.first_sentence_index;
    }
    if (p.predicted_label == Label::positive) {
      rp.source = RankSource::positive;
      rp.confidence = p.p_pos;
      positives.push_back(std::move(rp));
      pos_first.push_back(first_sentence);
    } else {
      rp.source = RankSource::negative_fallback;
      rp.confidence = p.p_neg;
      negatives.push_back(std::move(rp));
      neg_first.push_back(first_sentence);
    }
  }

  auto order = [](const std::vector<RankedPhrase>& block,
                  const std::vector<int>& first, bool descending) {
    std::vector<std::size_t> idx(block.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      if (block[a].confidence != block[b].confidence) {
        return descending ? block[a].confidence > block[b].confidence
                          : block[a].confidence < block[b].confidence;
      }
      return std::tie(first[a], block[a].canonical) <
             std::tie(first[b], block[b].canonical);
    });
    return idx;
  };

  std::vector<RankedPhrase> out;
  out.reserve(predictions.size());
  for (std::size_t i : order(positives, pos_first, true)) {
    out.push_back(positives[i]);
  }
  for (std::size_t i : order(negatives, neg_first, false)) {
    out.push_back(negatives[i]);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].rank = static_cast<int>(i) + 1;
  }
  return out;
}

std::vector<RankedPhrase> top_k(const std::vector<RankedPhrase>& ranked,
                                int k) {
  if (k < 0) {
    throw ContractError("top_k: k must be >= 0, got " + std::to_string(k));
  }
  std::size_t take = std::min(static_cast<std::size_t>(k), ranked.size());
  return std::vector<RankedPhrase>(ranked.begin(), ranked.begin() + take);
}

}  // namespace keyex
