#ifndef KEYEX_RANKING_HPP
#define KEYEX_RANKING_HPP

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "keyex/mlp.hpp"

namespace keyex {

enum class RankSource { positive, negative_fallback };

const char* rank_source_name(RankSource source);

struct RankedPhrase {
  std::string canonical;
  std::string display;
  int rank = 0;  // contiguous from 1
  double confidence = 0.0;
  RankSource source = RankSource::positive;
};

// Tie-breaking metadata; phrases without an entry sort last among ties.
struct CandidateDetail {
  std::string display;
  int first_sentence_index = std::numeric_limits<int>::max();
};
using CandidateDetails = std::map<std::string, CandidateDetail>;

// Predicted positives first, by descending p_pos; predicted negatives
// appended by ascending p_neg (least confidently negative first). Ties break
// on earlier first occurrence, then lexicographic canonical.
std::vector<RankedPhrase> rank_candidates(
    const std::vector<Prediction>& predictions,
    const CandidateDetails& details = {});

std::vector<RankedPhrase> top_k(const std::vector<RankedPhrase>& ranked,
                                int k);

}  // namespace keyex

#endif  // KEYEX_RANKING_HPP
