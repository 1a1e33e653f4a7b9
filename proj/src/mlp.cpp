#include "keyex/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "keyex/util.hpp"

namespace keyex {

namespace {

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

std::array<double, 3> inputs_of(const FeatureVector& fv) {
  return {fv.thematic, fv.position, fv.length};
}

struct Activations {
  std::vector<double> hidden;
  std::array<double, 2> output;
};

Activations forward_full(const MLPModel& m, const FeatureVector& fv) {
  Activations act;
  const std::array<double, 3> x = inputs_of(fv);
  act.hidden.resize(m.n_hidden);
  for (int j = 0; j < m.n_hidden; ++j) {
    double net = m.b_h[j];
    for (int i = 0; i < m.n_inputs; ++i) {
      net += m.w_ih[j * m.n_inputs + i] * x[i];
    }
    act.hidden[j] = sigmoid(net);
  }
  for (int k = 0; k < m.n_outputs; ++k) {
    double net = m.b_o[k];
    for (int j = 0; j < m.n_hidden; ++j) {
      net += m.w_ho[k * m.n_hidden + j] * act.hidden[j];
    }
    act.output[k] = sigmoid(net);
  }
  return act;
}

}  // namespace

MLPModel init_network(int n_hidden, std::uint64_t seed) {
  if (n_hidden < 1) {
    throw ContractError("init_network: need at least one hidden unit, got " +
                        std::to_string(n_hidden));
  }
  MLPModel m;
  m.n_hidden = n_hidden;
  m.init_seed = seed;
  std::mt19937_64 rng(seed);
  auto draw = [&rng] { return uniform_range(rng, -0.5, 0.5); };
  m.w_ih.resize(static_cast<std::size_t>(n_hidden) * m.n_inputs);
  m.b_h.resize(n_hidden);
  m.w_ho.resize(static_cast<std::size_t>(m.n_outputs) * n_hidden);
  m.b_o.resize(m.n_outputs);
  for (double& w : m.w_ih) w = draw();
  for (double& w : m.b_h) w = draw();
  for (double& w : m.w_ho) w = draw();
  for (double& w : m.b_o) w = draw();
  return m;
}

std::array<double, 2> forward(const MLPModel& model, const FeatureVector& x) {
  return forward_full(model, x).output;
}

std::pair<double, double> class_probabilities(const std::array<double, 2>& o) {
  if (o[0] < 0 || o[1] < 0) {
    throw ContractError("class_probabilities: negative output activation");
  }
  double sum = o[0] + o[1];
  if (sum == 0.0) return {0.5, 0.5};
  return {o[0] / sum, o[1] / sum};
}

std::array<double, 2> target_for(Label label) {
  return label == Label::positive ? std::array<double, 2>{1.0, 0.0}
                                  : std::array<double, 2>{0.0, 1.0};
}

TrainingExample make_example(const LabeledInstance& instance) {
  return {instance.features, target_for(instance.label)};
}

Gradients batch_gradients(const MLPModel& m,
                          const std::vector<TrainingExample>& batch) {
  if (batch.empty()) {
    throw ContractError("batch_gradients: empty batch");
  }
  Gradients g;
  g.w_ih.assign(m.w_ih.size(), 0.0);
  g.b_h.assign(m.b_h.size(), 0.0);
  g.w_ho.assign(m.w_ho.size(), 0.0);
  g.b_o.assign(m.b_o.size(), 0.0);

  std::vector<double> delta_out(m.n_outputs);
  std::vector<double> delta_hidden(m.n_hidden);
  for (const TrainingExample& ex : batch) {
    const Activations act = forward_full(m, ex.features);
    const std::array<double, 3> x = inputs_of(ex.features);

    for (int k = 0; k < m.n_outputs; ++k) {
      double diff = ex.target[k] - act.output[k];
      g.error += 0.5 * diff * diff;
      // dE/dnet_k for E = sum_k (t_k - o_k)^2 / 2
      delta_out[k] = -diff * act.output[k] * (1.0 - act.output[k]);
    }
    for (int j = 0; j < m.n_hidden; ++j) {
      double back = 0.0;
      for (int k = 0; k < m.n_outputs; ++k) {
        back += delta_out[k] * m.w_ho[k * m.n_hidden + j];
      }
      delta_hidden[j] = back * act.hidden[j] * (1.0 - act.hidden[j]);
    }
    for (int k = 0; k < m.n_outputs; ++k) {
      for (int j = 0; j < m.n_hidden; ++j) {
        g.w_ho[k * m.n_hidden + j] += delta_out[k] * act.hidden[j];
      }
      g.b_o[k] += delta_out[k];
    }
    for (int j = 0; j < m.n_hidden; ++j) {
      for (int i = 0; i < m.n_inputs; ++i) {
        g.w_ih[j * m.n_inputs + i] += delta_hidden[j] * x[i];
      }
      g.b_h[j] += delta_hidden[j];
    }
  }

  const double scale = 1.0 / static_cast<double>(batch.size());
  for (double& v : g.w_ih) v *= scale;
  for (double& v : g.b_h) v *= scale;
  for (double& v : g.w_ho) v *= scale;
  for (double& v : g.b_o) v *= scale;
  g.error *= scale;
  return g;
}

double batch_error(const MLPModel& m,
                   const std::vector<TrainingExample>& batch) {
  if (batch.empty()) {
    throw ContractError("batch_error: empty batch");
  }
  double error = 0.0;
  for (const TrainingExample& ex : batch) {
    const std::array<double, 2> o = forward(m, ex.features);
    for (int k = 0; k < m.n_outputs; ++k) {
      double diff = ex.target[k] - o[k];
      error += 0.5 * diff * diff;
    }
  }
  return error / static_cast<double>(batch.size());
}

TrainResult train(const std::vector<LabeledInstance>& instances,
                  const TrainConfig& config) {
  if (instances.empty()) {
    throw ContractError("train: no training instances");
  }
  if (config.learning_rate <= 0) {
    throw ContractError("train: learning rate must be positive");
  }
  if (config.epochs < 1) {
    throw ContractError("train: need at least one epoch");
  }
  if (config.validation_fraction < 0 || config.validation_fraction >= 1) {
    throw ContractError("train: validation fraction must lie in [0, 1)");
  }
  if (config.validation_fraction > 0 && config.validation_threshold < 1) {
    throw ContractError("train: validation threshold must be >= 1");
  }

  TrainResult result;
  TrainHistory& history = result.history;

  std::vector<std::size_t> positives;
  std::vector<std::size_t> negatives;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    (instances[i].label == Label::positive ? positives : negatives)
        .push_back(i);
  }
  if (positives.empty() || negatives.empty()) {
    history.warnings.push_back(
        std::string("training set has no ") +
        (positives.empty() ? "positive" : "negative") + " instances");
  }

  std::mt19937_64 rng(config.seed);

  std::vector<std::size_t> kept_negatives = negatives;
  if (config.negative_downsample > 0 && !positives.empty()) {
    std::size_t cap = static_cast<std::size_t>(
        config.negative_downsample * static_cast<double>(positives.size()));
    cap = std::max<std::size_t>(cap, 1);
    if (kept_negatives.size() > cap) {
      shuffle_deterministic(kept_negatives, rng);
      kept_negatives.resize(cap);
      std::sort(kept_negatives.begin(), kept_negatives.end());
    }
  }

  // Stratified holdout: a seeded slice of each class.
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> validation_idx;
  auto split_class = [&](std::vector<std::size_t> members) {
    std::size_t hold = static_cast<std::size_t>(
        config.validation_fraction * static_cast<double>(members.size()));
    shuffle_deterministic(members, rng);
    for (std::size_t i = 0; i < members.size(); ++i) {
      (i < hold ? validation_idx : train_idx).push_back(members[i]);
    }
  };
  if (config.validation_fraction > 0) {
    split_class(positives);
    split_class(kept_negatives);
    if (validation_idx.empty()) {
      history.warnings.push_back(
          "validation fraction too small for a holdout; validation disabled");
    }
  } else {
    train_idx = positives;
    train_idx.insert(train_idx.end(), kept_negatives.begin(),
                     kept_negatives.end());
  }
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(validation_idx.begin(), validation_idx.end());
  if (train_idx.empty()) {
    throw ContractError("train: holdout left no training instances");
  }

  std::vector<TrainingExample> train_set;
  train_set.reserve(train_idx.size());
  for (std::size_t i : train_idx) {
    train_set.push_back(make_example(instances[i]));
    (instances[i].label == Label::positive ? history.train_positives
                                           : history.train_negatives)++;
  }
  std::vector<TrainingExample> validation_set;
  validation_set.reserve(validation_idx.size());
  for (std::size_t i : validation_idx) {
    validation_set.push_back(make_example(instances[i]));
  }
  history.validation_size = static_cast<int>(validation_set.size());

  MLPModel model = init_network(config.hidden_units, config.seed);

  std::vector<double> vel_w_ih(model.w_ih.size(), 0.0);
  std::vector<double> vel_b_h(model.b_h.size(), 0.0);
  std::vector<double> vel_w_ho(model.w_ho.size(), 0.0);
  std::vector<double> vel_b_o(model.b_o.size(), 0.0);

  double best_validation = 0.0;
  int stale_epochs = 0;
  bool have_best = false;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    Gradients g = batch_gradients(model, train_set);
    history.training_error.push_back(g.error);

    if (!validation_set.empty()) {
      double verr = batch_error(model, validation_set);
      history.validation_error.push_back(verr);
      if (!have_best || verr < best_validation) {
        best_validation = verr;
        have_best = true;
        stale_epochs = 0;
      } else if (++stale_epochs >= config.validation_threshold) {
        history.early_stopped = true;  // epochs_run counts completed updates
        break;
      }
    }

    auto step = [&](std::vector<double>& w, std::vector<double>& vel,
                    const std::vector<double>& grad) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        vel[i] = -config.learning_rate * grad[i] + config.momentum * vel[i];
        w[i] += vel[i];
      }
    };
    step(model.w_ih, vel_w_ih, g.w_ih);
    step(model.b_h, vel_b_h, g.b_h);
    step(model.w_ho, vel_w_ho, g.w_ho);
    step(model.b_o, vel_b_o, g.b_o);
    history.epochs_run = epoch + 1;
  }

  result.model = std::move(model);
  return result;
}

std::vector<Prediction> predict(
    const MLPModel& model,
    const std::map<std::string, FeatureVector>& vectors) {
  std::vector<Prediction> out;
  out.reserve(vectors.size());
  for (const auto& [canonical, fv] : vectors) {
    Prediction p;
    p.canonical = canonical;
    auto [p_pos, p_neg] = class_probabilities(forward(model, fv));
    p.p_pos = p_pos;
    p.p_neg = p_neg;
    p.predicted_label = p_pos >= p_neg ? Label::positive : Label::negative;
    out.push_back(std::move(p));
  }
  return out;
}

std::string save_model(const MLPModel& model) {
  std::string out = "keyex-mlp v1\n";
  out += "seed " + std::to_string(model.init_seed) + "\n";
  out += "layers " + std::to_string(model.n_inputs) + " " +
         std::to_string(model.n_hidden) + " " +
         std::to_string(model.n_outputs) + "\n";
  auto emit = [&out](const char* name, const std::vector<double>& values) {
    out += name;
    for (double v : values) {
      out.push_back(' ');
      out += format_full(v);
    }
    out.push_back('\n');
  };
  emit("w_ih", model.w_ih);
  emit("b_h", model.b_h);
  emit("w_ho", model.w_ho);
  emit("b_o", model.b_o);
  return out;
}

MLPModel load_model(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "keyex-mlp v1") {
    throw ParseError("model file: bad magic or unsupported version");
  }

  MLPModel m;
  auto read_line = [&in, &line](const char* what) {
    if (!std::getline(in, line)) {
      throw ParseError(std::string("model file: truncated before ") + what);
    }
  };

  read_line("seed");
  {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key >> m.init_seed) || key != "seed") {
      throw ParseError("model file: malformed seed line");
    }
  }
  read_line("layer sizes");
  {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key >> m.n_inputs >> m.n_hidden >> m.n_outputs) ||
        key != "layers" || m.n_inputs != 3 || m.n_outputs != 2 ||
        m.n_hidden < 1) {
      throw ParseError("model file: malformed layer sizes");
    }
  }

  auto read_weights = [&](const char* name, std::vector<double>& into,
                          std::size_t count) {
    read_line(name);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key != name) {
      throw ParseError(std::string("model file: expected ") + name +
                       " section");
    }
    into.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
      if (!(ls >> into[i])) {
        throw ParseError(std::string("model file: truncated ") + name +
                         " weights");
      }
    }
    double extra;
    if (ls >> extra) {
      throw ParseError(std::string("model file: surplus values in ") + name);
    }
  };
  const std::size_t h = static_cast<std::size_t>(m.n_hidden);
  read_weights("w_ih", m.w_ih, h * 3);
  read_weights("b_h", m.b_h, h);
  read_weights("w_ho", m.w_ho, 2 * h);
  read_weights("b_o", m.b_o, 2);
  return m;
}

MLPModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str());
}

void save_model_file(const MLPModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model file: " + path);
  out << save_model(model);
}

}  // namespace keyex
