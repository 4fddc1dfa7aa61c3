#pragma once

#include <array>
#include <span>
#include <string>

#include <opencv2/core.hpp>

#include "reid/data/types.hpp"

namespace reid {

inline constexpr std::size_t kSkeletonFeatureCount = 13;

// Raw anthropometric measurements in image pixels, ordered (a)..(m):
//  a head height, b neck height, c neck-left shoulder, d neck-right shoulder,
//  e torso-right shoulder, f right arm, g left arm, h right upper leg,
//  i left upper leg, j torso length, k hip width, l = j/h, m = j/i.
using SkeletonFeatures = std::array<double, kSkeletonFeatureCount>;

// Z-score statistics over normalized skeleton features, estimated on the
// enrollment set and persisted alongside the PCA model.
struct SkeletonStats {
  SkeletonFeatures mean{};
  SkeletonFeatures stddev{};

  static SkeletonStats identity();
  // Population statistics; a zero standard deviation is replaced by 1.
  static SkeletonStats estimate(std::span<const SkeletonFeatures> scale_normalized);
};

struct SkeletonDescriptor {
  SkeletonFeatures values{};
};

// Accept a frame only if every joint is TRACKED and a face was detected.
bool gate_frame(const Frame& frame);

// Pinhole projection u = fx x/z + cx, v = fy y/z + cy. NOT_TRACKED joints are
// carried through with their state; any other joint with z <= 0 throws
// InvalidArgument naming the joint.
Skeleton2D project(const Skeleton3D& skeleton, const Calibration& calib);

// Lowest foreground row, used as the floor reference for the height features.
int floor_row(const cv::Mat& person_mask);

SkeletonFeatures skeleton_features(const Skeleton2D& skeleton, const cv::Mat& person_mask);
// Same measurements with an explicit floor row instead of a mask.
SkeletonFeatures skeleton_features(const Skeleton2D& skeleton, double floor_v);

// Divides (a)..(k) by the head height (a); ratios (l),(m) are kept as is.
SkeletonFeatures scale_normalize(const SkeletonFeatures& raw);

SkeletonDescriptor normalize_descriptor(const SkeletonFeatures& raw, const SkeletonStats& stats);

// Left/right mirror of a 2D skeleton about the vertical line u = axis_u.
Skeleton2D mirror_skeleton(const Skeleton2D& skeleton, double axis_u);

}  // namespace reid
