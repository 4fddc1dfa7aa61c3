#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "reid/data/types.hpp"

namespace reid {

// Deterministic synthetic RGB-D corpus. Subjects are rendered as articulated
// capsule figures with per-subject limb proportions, clothing colors and
// stripe textures; every pixel is labeled, so the same renderer also produces
// the annotated fashion images used for parser training.

struct Rgb8 {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  bool operator==(const Rgb8&) const = default;
};

enum class StripeAxis : std::uint8_t { kNone = 0, kHorizontal = 1, kVertical = 2 };

struct Garment {
  LabelId label = 0;
  Rgb8 color;
  StripeAxis stripes = StripeAxis::kNone;
  double stripe_period_m = 0.06;
  // Fabric weave: a sinusoidal intensity ripple in image pixels.
  double weave_period_px = 0.0;
  double weave_angle_rad = 0.0;
  double weave_amplitude = 0.0;
};

// Body measurements in meters.
struct BodyShape {
  double height = 1.75;
  double head_radius = 0.11;
  double neck = 0.06;
  double torso = 0.52;  // shoulder center to hip center
  double shoulder_half_width = 0.19;
  double hip_half_width = 0.11;
  double upper_arm = 0.30;
  double forearm = 0.26;
  double hand = 0.08;
  double thigh = 0.45;
  double shin = 0.43;
  double foot_height = 0.07;
};

struct SubjectSpec {
  std::uint32_t subject_id = 0;
  BodyShape body;
  Garment top;
  Garment bottom;
  Garment footwear;
  bool long_sleeves = false;
  Rgb8 skin;
  Rgb8 hair;
};

struct RenderPose {
  double depth_m = 2.2;    // hip-center distance from the camera
  double lateral_m = 0.0;  // horizontal offset of the hip center
  double arm_spread_rad = 0.25;
  double leg_spread_rad = 0.08;
  double joint_noise_m = 0.0;
  double pixel_noise = 0.0;  // std-dev of additive RGB noise (8-bit units)
};

struct RenderedPerson {
  cv::Mat rgb;     // CV_8UC3
  cv::Mat depth;   // CV_16UC1
  cv::Mat mask;    // CV_8UC1
  cv::Mat labels;  // CV_16UC1
  Skeleton3D skeleton;
  Skeleton2D pose;
};

struct FixtureOptions {
  std::uint64_t seed = 1;
  int subjects = 5;
  int frames_per_subject = 4;  // enrollment frames, written under train/
  int probe_frames = 0;        // probe frames, written under test/
  // Probes wear the clothing colors of the next subject (cyclic), modeling a
  // change of clothes between enrollment and query.
  bool permute_probe_colors = false;
  int annotated_images = 0;
  int width = 128;
  int height = 160;
  double pixel_noise = 3.0;
  double joint_noise_m = 0.004;
};

Calibration fixture_calibration(int width, int height);

// Draws a subject with distinct proportions and clothing. `palette_slot` and
// `palette_size` spread clothing hues so subjects in one fixture differ.
SubjectSpec random_subject(std::mt19937_64& rng, std::uint32_t subject_id, int palette_slot,
                           int palette_size);

RenderedPerson render_person(const SubjectSpec& subject, const RenderPose& pose,
                             const Calibration& calib, std::mt19937_64& rng);

// Writes the corpus layout documented in dataset.hpp and returns the subjects
// that were generated (enrollment appearance).
std::vector<SubjectSpec> generate_fixture(const std::filesystem::path& out_dir,
                                          const FixtureOptions& options);

// Convenience overload matching the CLI: `frames_per_subject` frames for each
// of `subjects` subjects, plus a handful of annotated images.
std::vector<SubjectSpec> generate_fixture(const std::filesystem::path& out_dir, std::uint64_t seed,
                                          int subjects, int frames_per_subject);

// Dataset-shaped skeleton: `train_sequences` enrollment and `test_sequences`
// probe sequences with one small frame each. Used to check corpus indexing at
// the scale of the real benchmark.
void generate_benchmark_layout(const std::filesystem::path& out_dir, std::uint64_t seed,
                               int train_sequences, int test_sequences);

// Portable RNG helpers; the standard distributions are implementation-defined.
double uniform01(std::mt19937_64& rng);
double uniform(std::mt19937_64& rng, double lo, double hi);
double gaussian(std::mt19937_64& rng);
int uniform_int(std::mt19937_64& rng, int lo, int hi_inclusive);

}  // namespace reid
