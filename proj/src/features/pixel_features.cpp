#include "reid/features/pixel_features.hpp"

#include <algorithm>

#include "reid/error.hpp"
#include "reid/features/color_space.hpp"
#include "reid/features/distance_maps.hpp"
#include "reid/features/lbp_hf.hpp"
#include "reid/features/skin_hair.hpp"

namespace reid {

FeatureMap compute_base_features(const cv::Mat& rgb, const Skeleton2D& pose, const FeatureConfig& config) {
  if (rgb.type() != CV_8UC3 || rgb.empty()) throw InvalidArgument("pixel features need an 8-bit RGB image");
  const int h = rgb.rows;
  const int w = rgb.cols;
  const cv::Mat lab = rgb_to_lab(rgb);
  cv::Mat lightness;
  cv::extractChannel(lab, lightness, 0);

  const FeatureMap lbp = lbp_hf_map(lightness, config.lbp_window);
  HogParams hog_params;
  hog_params.cell_size = std::min({config.hog_cell, w, h});
  const FeatureMap hogf = hog_map(lightness, hog_params);
  const cv::Mat boundary = boundary_distance_map(w, h);
  const FeatureMap posed = pose_distance_map(pose, w, h);

  FeatureMap out(h, w, channel::kBaseCount);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      auto px = out.pixel(y, x);
      const auto& l = lab.at<cv::Vec3d>(y, x);
      px[channel::kLab + 0] = l[0];
      px[channel::kLab + 1] = l[1];
      px[channel::kLab + 2] = l[2];
      std::ranges::copy(lbp.pixel(y, x), px.begin() + channel::kLbpHf);
      std::ranges::copy(hogf.pixel(y, x), px.begin() + channel::kHog);
      px[channel::kBoundary] = boundary.at<double>(y, x);
      std::ranges::copy(posed.pixel(y, x), px.begin() + channel::kPose);
    }
  }
  return out;
}

FeatureMap compute_pixel_features(const cv::Mat& rgb, const Skeleton2D& pose, const SkinHairModel& skin_hair,
                                  const FeatureConfig& config) {
  const FeatureMap base = compute_base_features(rgb, pose, config);
  FeatureMap out(base.rows(), base.cols(), channel::kCount);
  for (int y = 0; y < base.rows(); ++y) {
    for (int x = 0; x < base.cols(); ++x) {
      const auto src = base.pixel(y, x);
      auto dst = out.pixel(y, x);
      std::ranges::copy(src, dst.begin());
      const auto sh = skin_hair_likelihood(skin_hair, src);
      dst[channel::kSkinHair] = sh[0];
      dst[channel::kSkinHair + 1] = sh[1];
    }
  }
  return out;
}

FeatureMap select_channels(const FeatureMap& map, const std::vector<int>& channels) {
  FeatureMap out(map.rows(), map.cols(), static_cast<int>(channels.size()));
  for (int c : channels) {
    if (c < 0 || c >= map.channels()) throw InvalidArgument("channel index out of range");
  }
  for (int y = 0; y < map.rows(); ++y) {
    for (int x = 0; x < map.cols(); ++x) {
      const auto src = map.pixel(y, x);
      auto dst = out.pixel(y, x);
      for (std::size_t k = 0; k < channels.size(); ++k) dst[k] = src[static_cast<std::size_t>(channels[k])];
    }
  }
  return out;
}

const std::vector<int>& global_parse_channels() {
  static const std::vector<int> channels = [] {
    std::vector<int> c;
    for (int i = 0; i < 3; ++i) c.push_back(channel::kLab + i);
    for (int i = 0; i < kJointCount; ++i) c.push_back(channel::kPose + i);
    for (int i = 0; i < 38; ++i) c.push_back(channel::kLbpHf + i);
    for (int i = 0; i < 9; ++i) c.push_back(channel::kHog + i);
    return c;
  }();
  return channels;
}

std::vector<int> clothing_channels(bool include_pose) {
  std::vector<int> c;
  for (int i = 0; i < 3; ++i) c.push_back(channel::kLab + i);
  for (int i = 0; i < 38; ++i) c.push_back(channel::kLbpHf + i);
  for (int i = 0; i < 9; ++i) c.push_back(channel::kHog + i);
  c.push_back(channel::kBoundary);
  if (include_pose) {
    for (int i = 0; i < kJointCount; ++i) c.push_back(channel::kPose + i);
  }
  c.push_back(channel::kSkinHair);
  c.push_back(channel::kSkinHair + 1);
  return c;
}

}  // namespace reid
