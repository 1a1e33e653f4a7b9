#ifndef KEYEX_MLP_HPP
#define KEYEX_MLP_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "keyex/errors.hpp"
#include "keyex/features.hpp"

namespace keyex {

// (3 attributes + 2 classes) / 2, floored.
constexpr int kDefaultHiddenUnits = 2;

// One sigmoid hidden layer, two sigmoid output units (positive, negative).
struct MLPModel {
  int n_inputs = 3;
  int n_hidden = kDefaultHiddenUnits;
  int n_outputs = 2;
  std::uint64_t init_seed = 0;
  std::vector<double> w_ih;  // [hidden][input], row-major
  std::vector<double> b_h;   // [hidden]
  std::vector<double> w_ho;  // [output][hidden], row-major
  std::vector<double> b_o;   // [output]
};

// Weights drawn uniformly from [-0.5, 0.5); same seed, same model.
MLPModel init_network(int n_hidden, std::uint64_t seed);

std::array<double, 2> forward(const MLPModel& model, const FeatureVector& x);

// Output activations normalized to a two-class distribution; an all-zero
// output vector maps to (0.5, 0.5).
std::pair<double, double> class_probabilities(const std::array<double, 2>& o);

std::array<double, 2> target_for(Label label);  // positive -> (1,0)

struct TrainingExample {
  FeatureVector features;
  std::array<double, 2> target;
};

TrainingExample make_example(const LabeledInstance& instance);

struct Gradients {
  std::vector<double> w_ih, b_h, w_ho, b_o;
  double error = 0.0;  // batch mean of sum_k (t_k - o_k)^2 / 2
};

// Backpropagation of the batch-averaged squared error.
Gradients batch_gradients(const MLPModel& model,
                          const std::vector<TrainingExample>& batch);

double batch_error(const MLPModel& model,
                   const std::vector<TrainingExample>& batch);

struct TrainConfig {
  double learning_rate = 0.3;
  double momentum = 0.2;
  int epochs = 500;
  int validation_threshold = 20;     // consecutive non-improving epochs
  double validation_fraction = 0.0;  // 0 disables the holdout
  std::uint64_t seed = 0;
  int hidden_units = kDefaultHiddenUnits;
  // When > 0, negatives are subsampled to at most ratio * positives.
  double negative_downsample = 0.0;
};

struct TrainHistory {
  std::vector<double> training_error;    // error at the start of each epoch
  std::vector<double> validation_error;  // empty without a holdout
  int epochs_run = 0;
  bool early_stopped = false;
  int train_positives = 0;  // after downsampling and holdout split
  int train_negatives = 0;
  int validation_size = 0;
  std::vector<std::string> warnings;
};

struct TrainResult {
  MLPModel model;
  TrainHistory history;
};

TrainResult train(const std::vector<LabeledInstance>& instances,
                  const TrainConfig& config);

struct Prediction {
  std::string canonical;
  Label predicted_label = Label::negative;
  double p_pos = 0.0;
  double p_neg = 0.0;
};

// One prediction per vector; a probability tie labels positive.
std::vector<Prediction> predict(
    const MLPModel& model, const std::map<std::string, FeatureVector>& vectors);

std::string save_model(const MLPModel& model);
MLPModel load_model(const std::string& text);
MLPModel load_model_file(const std::string& path);
void save_model_file(const MLPModel& model, const std::string& path);

}  // namespace keyex

#endif  // KEYEX_MLP_HPP
