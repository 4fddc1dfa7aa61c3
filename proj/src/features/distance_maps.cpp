#include "reid/features/distance_maps.hpp"

#include <algorithm>
#include <cmath>

namespace reid {

cv::Mat boundary_distance_map(int width, int height) {
  cv::Mat map(height, width, CV_64FC1);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int d = std::min({x, y, width - 1 - x, height - 1 - y});
      map.at<double>(y, x) = -std::log1p(static_cast<double>(d));
    }
  }
  return map;
}

FeatureMap pose_distance_map(const Skeleton2D& pose, int width, int height) {
  FeatureMap map(height, width, kJointCount);
  const double sentinel = -std::log1p(std::hypot(width, height));
  for (int j = 0; j < kJointCount; ++j) {
    const auto& joint = pose.joints[static_cast<std::size_t>(j)];
    const bool missing = joint.state == TrackingState::kNotTracked;
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        map.at(y, x, j) = missing ? sentinel
                                  : -std::log1p(std::hypot(x - joint.position.u, y - joint.position.v));
      }
    }
  }
  return map;
}

}  // namespace reid
