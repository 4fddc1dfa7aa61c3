#pragma once

#include <opencv2/core.hpp>

#include "reid/data/types.hpp"
#include "reid/features/feature_map.hpp"

namespace reid {

// -log(1 + d) with d the Chebyshev distance to the nearest image border.
// Returns CV_64FC1.
cv::Mat boundary_distance_map(int width, int height);

// One channel per joint: -log(1 + ||p - joint||). NOT_TRACKED joints get the
// constant -log(1 + image diagonal).
FeatureMap pose_distance_map(const Skeleton2D& pose, int width, int height);

}  // namespace reid
