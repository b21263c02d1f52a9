#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ajam/constellation.hpp"

namespace ajam {

/// Balanced, shuffled (sample, symbol) pairs drawn around a constellation.
struct Dataset {
  std::vector<IQSample> inputs;
  std::vector<SymbolIndex> targets;
  double snr_db = 0.0;
  std::uint64_t seed = 0;
};

/// per_class noisy copies of every point at the given SNR (infinite SNR means
/// no noise), shuffled by seed.
Dataset generate_dataset(const ConstellationSpec& spec, std::size_t per_class, double snr_db,
                         std::uint64_t seed);

enum class Optimizer { kGradientDescent, kAdam };

struct TrainConfig {
  std::size_t hidden = 32;
  std::size_t epochs = 200;
  double learning_rate = 0.05;
  Optimizer optimizer = Optimizer::kAdam;
  std::uint64_t seed = 1;
};

/// 2 -> hidden (tanh) -> M feed-forward classifier with softmax cross-entropy.
///
/// Weights are stored row-major: w1 is hidden x 2, w2 is M x hidden.
class DemodModel {
public:
  DemodModel() = default;
  DemodModel(std::size_t order, std::size_t hidden, std::uint64_t seed);

  std::size_t order() const { return b2.size(); }
  std::size_t hidden() const { return b1.size(); }

  /// Raw output logits.
  std::vector<double> scores(IQSample x) const;

  /// argmax of scores, ties to the lowest index.
  SymbolIndex predict(IQSample x) const;

  /// Cross-entropy loss of label `target` at x.
  double loss(IQSample x, SymbolIndex target) const;

  /// d loss(x, target) / d x.
  IQSample input_gradient(IQSample x, SymbolIndex target) const;

  // Training metadata.
  std::size_t epochs = 0;
  double learning_rate = 0.0;
  std::uint64_t seed = 0;
  double train_snr_db = 0.0;
  std::string optimizer = "adam";

  std::vector<double> w1, b1, w2, b2;

  friend bool operator==(const DemodModel&, const DemodModel&) = default;

private:
  void hidden_layer(IQSample x, std::vector<double>& h) const;
};

/// Throws TrainingDiverged if the loss stops being finite.
DemodModel train(const Dataset& data, std::size_t order, const TrainConfig& cfg);

/// Mean cross-entropy over a dataset.
double mean_loss(const DemodModel& model, const Dataset& data);

double accuracy(const DemodModel& model, const Dataset& data);

/// Classical baseline: same contract as nearest_point.
SymbolIndex min_distance_demod(IQSample x, const ConstellationSpec& spec);

/// Text weight file, see README for the layout. Round-trips bit-exactly.
void save_model(const DemodModel& model, const std::filesystem::path& path);
DemodModel load_model(const std::filesystem::path& path);

std::string serialize_model(const DemodModel& model);
DemodModel parse_model(const std::string& text);

}  // namespace ajam
