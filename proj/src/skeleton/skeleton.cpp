#include "reid/skeleton/skeleton.hpp"

#include <cmath>

#include "reid/error.hpp"

namespace reid {

namespace {

double dist(const Skeleton2D& s, JointId a, JointId b) {
  const auto& p = s[a].position;
  const auto& q = s[b].position;
  return std::hypot(p.u - q.u, p.v - q.v);
}

}  // namespace

SkeletonStats SkeletonStats::identity() {
  SkeletonStats s;
  s.mean.fill(0.0);
  s.stddev.fill(1.0);
  return s;
}

SkeletonStats SkeletonStats::estimate(std::span<const SkeletonFeatures> samples) {
  if (samples.empty()) throw InvalidArgument("skeleton statistics need at least one sample");
  SkeletonStats s;
  const double n = static_cast<double>(samples.size());
  for (std::size_t k = 0; k < kSkeletonFeatureCount; ++k) {
    double sum = 0.0;
    for (const auto& x : samples) sum += x[k];
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& x : samples) ss += (x[k] - mean) * (x[k] - mean);
    const double sd = std::sqrt(ss / n);
    s.mean[k] = mean;
    s.stddev[k] = sd > 1e-12 * std::max(1.0, std::abs(mean)) ? sd : 1.0;
  }
  return s;
}

bool gate_frame(const Frame& frame) { return frame.face_detected && frame.skeleton.all_tracked(); }

Skeleton2D project(const Skeleton3D& skeleton, const Calibration& calib) {
  Skeleton2D out;
  for (int i = 0; i < kJointCount; ++i) {
    const auto& j = skeleton.joints[static_cast<std::size_t>(i)];
    auto& o = out.joints[static_cast<std::size_t>(i)];
    o.state = j.state;
    if (j.state == TrackingState::kNotTracked) continue;
    if (!(j.position.z > 0.0)) {
      throw InvalidArgument("cannot project joint " + std::string(joint_name(static_cast<JointId>(i))) +
                            ": depth must be positive");
    }
    o.position.u = calib.fx * j.position.x / j.position.z + calib.cx;
    o.position.v = calib.fy * j.position.y / j.position.z + calib.cy;
  }
  return out;
}

int floor_row(const cv::Mat& person_mask) {
  for (int y = person_mask.rows - 1; y >= 0; --y) {
    if (cv::countNonZero(person_mask.row(y)) > 0) return y;
  }
  throw InvalidArgument("person mask is empty");
}

SkeletonFeatures skeleton_features(const Skeleton2D& s, const cv::Mat& person_mask) {
  return skeleton_features(s, static_cast<double>(floor_row(person_mask)));
}

SkeletonFeatures skeleton_features(const Skeleton2D& s, double floor_v) {
  using J = JointId;
  SkeletonFeatures f{};
  f[0] = floor_v - s[J::kHead].position.v;
  f[1] = floor_v - s[J::kShoulderCenter].position.v;
  f[2] = dist(s, J::kShoulderCenter, J::kShoulderL);
  f[3] = dist(s, J::kShoulderCenter, J::kShoulderR);
  f[4] = dist(s, J::kSpine, J::kShoulderR);
  f[5] = dist(s, J::kShoulderR, J::kElbowR) + dist(s, J::kElbowR, J::kHandR);
  f[6] = dist(s, J::kShoulderL, J::kElbowL) + dist(s, J::kElbowL, J::kHandL);
  f[7] = dist(s, J::kHipR, J::kKneeR);
  f[8] = dist(s, J::kHipL, J::kKneeL);
  f[9] = dist(s, J::kShoulderCenter, J::kHipCenter);
  f[10] = dist(s, J::kHipL, J::kHipR);
  if (f[7] == 0.0 || f[8] == 0.0) {
    throw InvalidArgument("degenerate skeleton: zero upper-leg length, torso/leg ratios undefined");
  }
  f[11] = f[9] / f[7];
  f[12] = f[9] / f[8];
  return f;
}

SkeletonFeatures scale_normalize(const SkeletonFeatures& raw) {
  if (!(raw[0] > 0.0)) throw InvalidArgument("head height must be positive to normalize");
  SkeletonFeatures out = raw;
  for (std::size_t k = 0; k <= 10; ++k) out[k] = raw[k] / raw[0];
  return out;
}

SkeletonDescriptor normalize_descriptor(const SkeletonFeatures& raw, const SkeletonStats& stats) {
  const auto scaled = scale_normalize(raw);
  SkeletonDescriptor d;
  for (std::size_t k = 0; k < kSkeletonFeatureCount; ++k) {
    d.values[k] = (scaled[k] - stats.mean[k]) / stats.stddev[k];
  }
  return d;
}

Skeleton2D mirror_skeleton(const Skeleton2D& s, double axis_u) {
  Skeleton2D out;
  for (int i = 0; i < kJointCount; ++i) {
    const auto id = static_cast<JointId>(i);
    auto j = s[id];
    j.position.u = 2.0 * axis_u - j.position.u;
    out[mirror_joint(id)] = j;
  }
  return out;
}

}  // namespace reid
