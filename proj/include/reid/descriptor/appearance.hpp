#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <opencv2/core.hpp>

#include "reid/data/types.hpp"
#include "reid/features/feature_map.hpp"
#include "reid/features/pixel_features.hpp"
#include "reid/skeleton/skeleton.hpp"

namespace reid {

inline constexpr int kPoolGrid = 4;  // pooling cells per side
inline constexpr int kBodyPartCount = 10;

struct BodyPartRegion {
  std::string name;
  JointId from;
  JointId to;
  cv::Rect box;
};

enum class PoolingScope { kPerPart, kWholeBody };

struct DescriptorConfig {
  FeatureConfig features;
  bool include_pose_channels = false;
  PoolingScope scope = PoolingScope::kPerPart;
  int pca_dim = 64;
  double skeleton_weight = 1.0;
};

// Ten joint-pair boxes, padded by a quarter of the joint-pair distance on
// every side and clipped to the image; sorted by part name.
std::vector<BodyPartRegion> part_regions(const Skeleton2D& pose, int width, int height);

// Mean and population standard deviation of every channel over the mask
// pixels of each cell of a 4x4 grid laid over `region`. Layout: cell-major
// (row by row), per cell C means followed by C standard deviations; cells
// without mask pixels contribute zeros.
std::vector<double> pool_region(const FeatureMap& features, const cv::Mat& mask, const cv::Rect& region);

// Length of the concatenated pooled vector for a configuration.
std::size_t pooled_dimension(const DescriptorConfig& config);

// Channel of every pooled dimension: one channel per (statistic, feature
// channel) pair, shared across cells and parts.
std::vector<std::uint32_t> pooled_channel_map(const DescriptorConfig& config);

// Pools the clothing channels of a 73-channel feature map over every body
// part (or the whole person) and concatenates the results.
std::vector<double> clothing_vector(const FeatureMap& pixel_features, const cv::Mat& mask,
                                    const Skeleton2D& pose, const DescriptorConfig& config);

// [clothing || weight * skeleton].
std::vector<double> identity_descriptor(std::span<const double> clothing, const SkeletonDescriptor& skeleton,
                                        double skeleton_weight);

}  // namespace reid
