#include "keyex/config.hpp"

#include "keyex/errors.hpp"

namespace keyex {

TrainConfig RunConfig::train_config() const {
  TrainConfig tc;
  tc.learning_rate = learning_rate;
  tc.momentum = momentum;
  tc.epochs = epochs;
  tc.validation_threshold = validation_threshold;
  tc.validation_fraction = validation_fraction;
  tc.seed = seed;
  tc.hidden_units = hidden_units;
  tc.negative_downsample = negative_downsample;
  return tc;
}

void validate(const RunConfig& config) {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (config.abstract_window < 0) fail("abstract window must be >= 0");
  if (config.k < 0) fail("k must be >= 0");
  if (config.hidden_units < 1) fail("hidden units must be >= 1");
  if (config.learning_rate <= 0) fail("learning rate must be positive");
  if (config.momentum < 0) fail("momentum must be >= 0");
  if (config.epochs < 1) fail("epochs must be >= 1");
  if (config.validation_threshold < 1) fail("validation threshold must be >= 1");
  if (config.validation_fraction < 0 || config.validation_fraction >= 1) {
    fail("validation fraction must lie in [0, 1)");
  }
  if (config.folds < 2) fail("folds must be >= 2");
  if (config.negative_downsample < 0) {
    fail("negative downsample ratio must be >= 0");
  }
  if (config.jobs < 1) fail("jobs must be >= 1");
}

}  // namespace keyex
