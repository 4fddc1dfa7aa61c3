#pragma once

#include <vector>

#include <opencv2/core.hpp>

#include "reid/data/types.hpp"
#include "reid/features/feature_map.hpp"
#include "reid/features/hog.hpp"

namespace reid {

struct SkinHairModel;

// Per-pixel feature layout.
namespace channel {
inline constexpr int kLab = 0;        // 3: L, a, b
inline constexpr int kLbpHf = 3;      // 38
inline constexpr int kHog = 41;       // 9
inline constexpr int kBoundary = 50;  // 1
inline constexpr int kPose = 51;      // 20, one per joint
inline constexpr int kSkinHair = 71;  // 2: skin, hair
inline constexpr int kBaseCount = 71;
inline constexpr int kCount = 73;
}  // namespace channel

struct FeatureConfig {
  int lbp_window = 11;
  int hog_cell = 8;
};

// Lab, LBP-HF (on L), HOG (on L), boundary and pose distance; 71 channels.
FeatureMap compute_base_features(const cv::Mat& rgb, const Skeleton2D& pose, const FeatureConfig& config);

// Full 73-channel layout including skin/hair likelihoods.
FeatureMap compute_pixel_features(const cv::Mat& rgb, const Skeleton2D& pose,
                                  const SkinHairModel& skin_hair, const FeatureConfig& config);

// Copies selected channels into a new map.
FeatureMap select_channels(const FeatureMap& map, const std::vector<int>& channels);

// Channels used by the global clothing parse: Lab, pose distances, LBP-HF, HOG.
const std::vector<int>& global_parse_channels();

// Channels pooled into the clothing descriptor: Lab, LBP-HF, HOG, boundary
// distance and skin/hair; pose distances optionally.
std::vector<int> clothing_channels(bool include_pose);

}  // namespace reid
