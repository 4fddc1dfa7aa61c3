#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reid/data/types.hpp"
#include "reid/features/feature_map.hpp"
#include "reid/features/logistic.hpp"
#include "reid/features/pixel_features.hpp"
#include "reid/parsing/label_maps.hpp"

namespace reid {

// One-vs-all logistic models over the global-parse channels. Labels that had
// no training pixels carry no model and score 0.
struct GlobalParseModel {
  static constexpr std::uint16_t kVersion = 1;
  std::uint32_t feature_dim = 0;
  std::vector<std::optional<BinaryLogistic>> labels;  // indexed by LabelId

  std::vector<std::uint8_t> serialize() const;
  static GlobalParseModel deserialize(std::span<const std::uint8_t> bytes);
  void save(const std::string& path) const;
  static GlobalParseModel load(const std::string& path);
};

struct GlobalTrainOptions {
  LogisticTrainOptions optimizer;
  int pixel_stride = 4;
};

struct GlobalTrainResult {
  GlobalParseModel model;
  std::vector<LabelId> omitted;  // vocabulary labels without training pixels
};

// Trains on every pixel (subsampled) of the annotated images, null pixels
// included.
GlobalTrainResult train_global(std::span<const AnnotatedImage> annotated, const FeatureConfig& config,
                               const GlobalTrainOptions& options = {});

// Same, from precomputed per-pixel rows (global-parse channels) and labels.
GlobalTrainResult train_global(const Eigen::MatrixXd& x, std::span<const int> labels,
                               const LogisticTrainOptions& optimizer = {});

// P(y = l | x) for every label and pixel of a feature map holding at least
// the base channels.
LabelMaps global_probabilities(const GlobalParseModel& model, const FeatureMap& features);

// Probabilities restricted to the predicted tags: labels outside `tags` are 0.
LabelMaps restrict_to(LabelMaps probabilities, const TagSet& tags);

LabelMaps global_parse(const GlobalParseModel& model, const FeatureMap& features, const TagSet& tags);

}  // namespace reid
