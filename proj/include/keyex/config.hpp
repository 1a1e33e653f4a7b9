#ifndef KEYEX_CONFIG_HPP
#define KEYEX_CONFIG_HPP

#include <cstdint>
#include <string>

#include "keyex/mlp.hpp"

namespace keyex {

// Pipeline-wide knobs; defaults follow the module contracts.
struct RunConfig {
  bool stem = true;
  int abstract_window = 10;  // sentence cutoff for the position score
  int k = 5;
  int hidden_units = kDefaultHiddenUnits;
  double learning_rate = 0.3;
  double momentum = 0.2;
  int epochs = 500;
  int validation_threshold = 20;
  double validation_fraction = 0.0;
  int folds = 3;
  std::uint64_t seed = 42;
  double negative_downsample = 0.0;  // 0 = keep all negatives
  int jobs = 1;
  bool pretagged = false;
  bool title_line = false;
  bool reject_unknown_tags = false;

  TrainConfig train_config() const;
};

// Throws ConfigError when a field is outside its documented range.
void validate(const RunConfig& config);

}  // namespace keyex

#endif  // KEYEX_CONFIG_HPP
