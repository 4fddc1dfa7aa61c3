#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "reid/features/feature_map.hpp"
#include "reid/parsing/segmentation.hpp"

namespace reid {

// Visual words for one contiguous block of feature channels.
struct WordGroup {
  int first_channel = 0;
  int dims = 0;
  std::vector<double> words;  // count x dims, row-major

  int count() const { return dims == 0 ? 0 : static_cast<int>(words.size()) / dims; }
  std::span<const double> word(int i) const {
    return {words.data() + static_cast<std::size_t>(i) * dims, static_cast<std::size_t>(dims)};
  }
  // Nearest word by squared Euclidean distance, ties to the lowest index.
  int assign(std::span<const double> pixel) const;
};

struct BowVocabulary {
  static constexpr std::uint16_t kVersion = 1;
  std::vector<WordGroup> groups;

  std::size_t dimension() const;

  std::vector<std::uint8_t> serialize() const;
  static BowVocabulary deserialize(std::span<const std::uint8_t> bytes);
  void save(const std::string& path) const;
  static BowVocabulary load(const std::string& path);
};

struct BowTrainOptions {
  int words_per_group = 50;
  int pixel_stride = 4;
  int max_iterations = 30;
  std::uint64_t seed = 1;
};

// Lab, LBP-HF and HOG channel groups of the per-pixel layout.
struct ChannelBlock {
  int first;
  int count;
};
std::vector<ChannelBlock> bow_channel_blocks();

// k-means per channel group over subsampled pixels. Initialization picks one
// seeded random sample and then repeatedly the sample farthest from all
// chosen centers.
BowVocabulary train_bow_vocabulary(std::span<const FeatureMap> feature_maps, const BowTrainOptions& options = {});

// One concatenated histogram per segment; every group is L1-normalized so a
// histogram sums to the number of groups. Throws InvalidArgument when a
// segment has no pixels.
std::vector<std::vector<double>> bow_features(const FeatureMap& features, const Segmentation& segmentation,
                                              const BowVocabulary& vocabulary);

}  // namespace reid
