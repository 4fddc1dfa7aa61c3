#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include <opencv2/core.hpp>

#include "reid/data/vocabulary.hpp"

namespace reid {

struct Calibration {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;

  // Throws DataError when fx/fy are not positive or the principal point
  // lies outside the image.
  void validate() const;
};

// Twenty-joint skeleton in the Kinect v1 ordering.
enum class JointId : int {
  kHipCenter = 0,
  kSpine,
  kShoulderCenter,
  kHead,
  kShoulderL,
  kElbowL,
  kWristL,
  kHandL,
  kShoulderR,
  kElbowR,
  kWristR,
  kHandR,
  kHipL,
  kKneeL,
  kAnkleL,
  kFootL,
  kHipR,
  kKneeR,
  kAnkleR,
  kFootR,
};

inline constexpr int kJointCount = 20;

std::string_view joint_name(JointId id);
std::optional<JointId> joint_from_name(std::string_view name);
// Left/right counterpart; center joints map to themselves.
JointId mirror_joint(JointId id);

enum class TrackingState : std::uint8_t { kNotTracked = 0, kInferred = 1, kTracked = 2 };

std::string_view tracking_state_name(TrackingState state);
std::optional<TrackingState> tracking_state_from_name(std::string_view name);

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct Point2 {
  double u = 0.0;
  double v = 0.0;
};

struct Joint3D {
  Point3 position;
  TrackingState state = TrackingState::kNotTracked;
};

struct Joint2D {
  Point2 position;
  TrackingState state = TrackingState::kNotTracked;
};

template <typename J>
struct Skeleton {
  std::array<J, kJointCount> joints{};

  J& operator[](JointId id) { return joints[static_cast<std::size_t>(id)]; }
  const J& operator[](JointId id) const { return joints[static_cast<std::size_t>(id)]; }

  bool all_tracked() const {
    for (const auto& j : joints) {
      if (j.state != TrackingState::kTracked) return false;
    }
    return true;
  }
  bool any_tracked() const {
    for (const auto& j : joints) {
      if (j.state == TrackingState::kTracked) return true;
    }
    return false;
  }
};

using Skeleton3D = Skeleton<Joint3D>;
using Skeleton2D = Skeleton<Joint2D>;

// One RGB-D observation. Images are cv::Mat with rgb in R,G,B channel order
// (CV_8UC3), depth in millimeters (CV_16UC1, 0 = invalid) and a binary
// foreground mask (CV_8UC1, nonzero = person).
struct Frame {
  cv::Mat rgb;
  cv::Mat depth;
  cv::Mat person_mask;
  Skeleton3D skeleton;
  bool face_detected = false;
  Calibration calibration;
  std::string sequence_id;
  int frame_index = 0;

  int width() const { return rgb.cols; }
  int height() const { return rgb.rows; }
};

using TagSet = std::set<LabelId>;

struct GroundTruthTags {
  std::string sequence_id;
  TagSet tags;
};

// Fashion-style annotated photo used to train the skin/hair and global parse
// models and to populate the fashion gallery. Foreground = non-null pixels.
struct AnnotatedImage {
  std::string image_id;
  cv::Mat rgb;     // CV_8UC3, RGB order
  cv::Mat labels;  // CV_16UC1 label ids
  TagSet tags;
  Skeleton2D pose;

  cv::Mat foreground_mask() const;
};

}  // namespace reid
