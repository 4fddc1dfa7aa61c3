#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "reid/data/types.hpp"
#include "reid/features/logistic.hpp"

namespace reid {

struct FeatureConfig;

// One-vs-all skin and hair detectors over the base pixel features
// (everything except the skin/hair channels themselves).
struct SkinHairModel {
  static constexpr std::uint16_t kVersion = 1;
  std::uint32_t feature_dim = 0;
  BinaryLogistic skin;
  BinaryLogistic hair;

  std::vector<std::uint8_t> serialize() const;
  static SkinHairModel deserialize(std::span<const std::uint8_t> bytes);
  void save(const std::string& path) const;
  static SkinHairModel load(const std::string& path);
};

struct SkinHairTrainOptions {
  LogisticTrainOptions optimizer;
  int pixel_stride = 3;  // subsample every n-th pixel in x and y
};

// Throws DataError when the annotations contain no skin or no hair pixels.
SkinHairModel train_skin_hair(std::span<const AnnotatedImage> annotated, const FeatureConfig& config,
                              const SkinHairTrainOptions& options = {});

// Independent sigmoids (skin, hair); throws InvalidArgument on dimension
// mismatch.
std::array<double, 2> skin_hair_likelihood(const SkinHairModel& model, std::span<const double> features);

}  // namespace reid
