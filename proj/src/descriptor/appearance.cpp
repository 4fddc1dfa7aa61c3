#include "reid/descriptor/appearance.hpp"

#include <algorithm>
#include <cmath>

#include <opencv2/imgproc.hpp>

#include "reid/error.hpp"

namespace reid {

namespace {

struct PartDef {
  const char* name;
  JointId from;
  JointId to;
};

// Alphabetical by name.
constexpr PartDef kParts[kBodyPartCount] = {
    {"head", JointId::kHead, JointId::kShoulderCenter},
    {"lower_arm_l", JointId::kElbowL, JointId::kWristL},
    {"lower_arm_r", JointId::kElbowR, JointId::kWristR},
    {"lower_leg_l", JointId::kKneeL, JointId::kAnkleL},
    {"lower_leg_r", JointId::kKneeR, JointId::kAnkleR},
    {"torso", JointId::kShoulderCenter, JointId::kHipCenter},
    {"upper_arm_l", JointId::kShoulderL, JointId::kElbowL},
    {"upper_arm_r", JointId::kShoulderR, JointId::kElbowR},
    {"upper_leg_l", JointId::kHipL, JointId::kKneeL},
    {"upper_leg_r", JointId::kHipR, JointId::kKneeR},
};

void clip_span(double lo, double hi, int size, int& out_lo, int& out_hi) {
  out_lo = std::clamp(static_cast<int>(std::floor(lo)), 0, size - 1);
  out_hi = std::clamp(static_cast<int>(std::ceil(hi)), 0, size - 1);
}

cv::Rect mask_bounds(const cv::Mat& mask) {
  std::vector<cv::Point> points;
  cv::findNonZero(mask, points);
  if (points.empty()) throw InvalidArgument("person mask is empty");
  return cv::boundingRect(points);
}

}  // namespace

std::vector<BodyPartRegion> part_regions(const Skeleton2D& pose, int width, int height) {
  std::vector<BodyPartRegion> parts;
  parts.reserve(kBodyPartCount);
  for (const auto& def : kParts) {
    const auto& a = pose[def.from].position;
    const auto& b = pose[def.to].position;
    const double pad = 0.25 * std::hypot(a.u - b.u, a.v - b.v);
    int x0, x1, y0, y1;
    clip_span(std::min(a.u, b.u) - pad, std::max(a.u, b.u) + pad, width, x0, x1);
    clip_span(std::min(a.v, b.v) - pad, std::max(a.v, b.v) + pad, height, y0, y1);
    parts.push_back({def.name, def.from, def.to, cv::Rect(x0, y0, x1 - x0 + 1, y1 - y0 + 1)});
  }
  return parts;
}

std::vector<double> pool_region(const FeatureMap& features, const cv::Mat& mask, const cv::Rect& region) {
  if (region.area() <= 0) throw InvalidArgument("pooling region is empty");
  if ((region & cv::Rect(0, 0, features.cols(), features.rows())) != region) {
    throw InvalidArgument("pooling region outside the feature map");
  }
  const int channels = features.channels();
  std::vector<double> out(static_cast<std::size_t>(kPoolGrid * kPoolGrid * 2 * channels), 0.0);
  std::vector<double> sum(static_cast<std::size_t>(channels));
  std::vector<double> sq(static_cast<std::size_t>(channels));

  for (int gy = 0; gy < kPoolGrid; ++gy) {
    const int ys = region.y + gy * region.height / kPoolGrid;
    const int ye = region.y + (gy + 1) * region.height / kPoolGrid;
    for (int gx = 0; gx < kPoolGrid; ++gx) {
      const int xs = region.x + gx * region.width / kPoolGrid;
      const int xe = region.x + (gx + 1) * region.width / kPoolGrid;
      std::fill(sum.begin(), sum.end(), 0.0);
      std::fill(sq.begin(), sq.end(), 0.0);
      int count = 0;
      for (int y = ys; y < ye; ++y) {
        for (int x = xs; x < xe; ++x) {
          if (mask.at<std::uint8_t>(y, x) == 0) continue;
          ++count;
          const auto px = features.pixel(y, x);
          for (int c = 0; c < channels; ++c) sum[static_cast<std::size_t>(c)] += px[static_cast<std::size_t>(c)];
        }
      }
      if (count == 0) continue;
      for (auto& s : sum) s /= count;
      for (int y = ys; y < ye; ++y) {
        for (int x = xs; x < xe; ++x) {
          if (mask.at<std::uint8_t>(y, x) == 0) continue;
          const auto px = features.pixel(y, x);
          for (int c = 0; c < channels; ++c) {
            const double d = px[static_cast<std::size_t>(c)] - sum[static_cast<std::size_t>(c)];
            sq[static_cast<std::size_t>(c)] += d * d;
          }
        }
      }
      auto* cell = out.data() + static_cast<std::size_t>((gy * kPoolGrid + gx) * 2 * channels);
      for (int c = 0; c < channels; ++c) {
        cell[c] = sum[static_cast<std::size_t>(c)];
        cell[channels + c] = std::sqrt(sq[static_cast<std::size_t>(c)] / count);
      }
    }
  }
  return out;
}

std::size_t pooled_dimension(const DescriptorConfig& config) {
  const std::size_t channels = clothing_channels(config.include_pose_channels).size();
  const std::size_t regions = config.scope == PoolingScope::kPerPart ? kBodyPartCount : 1;
  return regions * kPoolGrid * kPoolGrid * 2 * channels;
}

std::vector<std::uint32_t> pooled_channel_map(const DescriptorConfig& config) {
  const std::size_t block = 2 * clothing_channels(config.include_pose_channels).size();
  std::vector<std::uint32_t> out(pooled_dimension(config));
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = static_cast<std::uint32_t>(j % block);
  return out;
}

std::vector<double> clothing_vector(const FeatureMap& pixel_features, const cv::Mat& mask, const Skeleton2D& pose,
                                    const DescriptorConfig& config) {
  if (pixel_features.channels() != channel::kCount) {
    throw InvalidArgument("clothing vector needs the full per-pixel feature layout");
  }
  const FeatureMap selected = select_channels(pixel_features, clothing_channels(config.include_pose_channels));
  std::vector<double> out;
  out.reserve(pooled_dimension(config));
  if (config.scope == PoolingScope::kWholeBody) {
    const auto pooled = pool_region(selected, mask, mask_bounds(mask));
    out.insert(out.end(), pooled.begin(), pooled.end());
  } else {
    for (const auto& part : part_regions(pose, pixel_features.cols(), pixel_features.rows())) {
      const auto pooled = pool_region(selected, mask, part.box);
      out.insert(out.end(), pooled.begin(), pooled.end());
    }
  }
  return out;
}

std::vector<double> identity_descriptor(std::span<const double> clothing, const SkeletonDescriptor& skeleton,
                                        double skeleton_weight) {
  std::vector<double> out(clothing.begin(), clothing.end());
  for (double v : skeleton.values) out.push_back(skeleton_weight * v);
  return out;
}

}  // namespace reid
