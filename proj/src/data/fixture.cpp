#include "reid/data/fixture.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "reid/data/dataset.hpp"
#include "reid/error.hpp"
#include "reid/skeleton/skeleton.hpp"

namespace reid {

namespace {

constexpr double kCameraHeight = 1.0;  // floor lies at y = +1 m in camera coordinates
constexpr std::uint16_t kBackgroundDepthMm = 4000;

struct Vec2 {
  double x;
  double y;
};

double segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double ex = p.x - (a.x + t * dx);
  const double ey = p.y - (a.y + t * dy);
  return std::sqrt(ex * ex + ey * ey);
}

Rgb8 hsv_to_rgb(double h, double s, double v) {
  h = h - std::floor(h);
  const double c = v * s;
  const double hp = h * 6.0;
  const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hp) % 6) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  const double m = v - c;
  const auto to8 = [m](double ch) {
    return static_cast<std::uint8_t>(std::clamp(std::lround((ch + m) * 255.0), 0L, 255L));
  };
  return {to8(r), to8(g), to8(b)};
}

LabelId label(const char* name) { return Vocabulary::canonical().id(name); }

// Raster canvas writing color, label and depth for one person.
class Canvas {
 public:
  Canvas(RenderedPerson& out, double pixels_per_meter, Point2 origin)
      : out_(out), ppm_(pixels_per_meter), origin_(origin) {}

  double ppm() const { return ppm_; }

  void capsule(Point2 a, Point2 b, double radius_m, const Garment& g) {
    const double r = radius_m * ppm_;
    const Vec2 pa{a.u, a.v};
    const Vec2 pb{b.u, b.v};
    fill(std::min(a.u, b.u) - r, std::max(a.u, b.u) + r, std::min(a.v, b.v) - r,
         std::max(a.v, b.v) + r, g, [&](Vec2 p) { return segment_distance(p, pa, pb) <= r; });
  }

  void disc(Point2 c, double radius_px, const Garment& g, std::function<bool(Vec2)> extra = {}) {
    fill(c.u - radius_px, c.u + radius_px, c.v - radius_px, c.v + radius_px, g, [&](Vec2 p) {
      const double dx = p.x - c.u;
      const double dy = p.y - c.v;
      return dx * dx + dy * dy <= radius_px * radius_px && (!extra || extra(p));
    });
  }

  // Convex quadrilateral, vertices in order.
  void quad(const std::array<Point2, 4>& q, const Garment& g) {
    double x0 = q[0].u, x1 = q[0].u, y0 = q[0].v, y1 = q[0].v;
    for (const auto& p : q) {
      x0 = std::min(x0, p.u); x1 = std::max(x1, p.u);
      y0 = std::min(y0, p.v); y1 = std::max(y1, p.v);
    }
    fill(x0, x1, y0, y1, g, [&](Vec2 p) {
      int sign = 0;
      for (int i = 0; i < 4; ++i) {
        const auto& a = q[static_cast<std::size_t>(i)];
        const auto& b = q[static_cast<std::size_t>((i + 1) % 4)];
        const double cross = (b.u - a.u) * (p.y - a.v) - (b.v - a.v) * (p.x - a.u);
        const int s = cross > 0 ? 1 : (cross < 0 ? -1 : 0);
        if (s == 0) continue;
        if (sign == 0) sign = s;
        else if (s != sign) return false;
      }
      return true;
    });
  }

 private:
  template <typename Inside>
  void fill(double x0, double x1, double y0, double y1, const Garment& g, Inside&& inside) {
    const int w = out_.rgb.cols;
    const int h = out_.rgb.rows;
    const int xs = std::max(0, static_cast<int>(std::floor(x0)));
    const int xe = std::min(w - 1, static_cast<int>(std::ceil(x1)));
    const int ys = std::max(0, static_cast<int>(std::floor(y0)));
    const int ye = std::min(h - 1, static_cast<int>(std::ceil(y1)));
    for (int y = ys; y <= ye; ++y) {
      for (int x = xs; x <= xe; ++x) {
        if (!inside(Vec2{static_cast<double>(x), static_cast<double>(y)})) continue;
        out_.rgb.at<cv::Vec3b>(y, x) = shade(g, x, y);
        out_.labels.at<std::uint16_t>(y, x) = static_cast<std::uint16_t>(g.label);
        out_.mask.at<std::uint8_t>(y, x) = 255;
      }
    }
  }

  cv::Vec3b shade(const Garment& g, int x, int y) const {
    double f = 1.0;
    if (g.stripes != StripeAxis::kNone) {
      const double coord = g.stripes == StripeAxis::kHorizontal ? (y - origin_.v) : (x - origin_.u);
      const double phase = coord / (g.stripe_period_m * ppm_);
      if (phase - std::floor(phase) >= 0.5) f = 0.6;
    }
    if (g.weave_period_px > 0.0) {
      const double t = (x - origin_.u) * std::cos(g.weave_angle_rad) +
                       (y - origin_.v) * std::sin(g.weave_angle_rad);
      f *= 1.0 + g.weave_amplitude * std::sin(2.0 * std::numbers::pi * t / g.weave_period_px);
    }
    return {cv::saturate_cast<std::uint8_t>(g.color.r * f),
            cv::saturate_cast<std::uint8_t>(g.color.g * f),
            cv::saturate_cast<std::uint8_t>(g.color.b * f)};
  }

  RenderedPerson& out_;
  double ppm_;
  Point2 origin_;
};

Skeleton3D build_skeleton(const BodyShape& b, const RenderPose& pose) {
  Skeleton3D s;
  const double z = pose.depth_m;
  const double floor_y = kCameraHeight;
  const double ls = pose.leg_spread_rad;
  const double as = pose.arm_spread_rad;
  const double leg_drop = (b.thigh + b.shin) * std::cos(ls);
  const double hip_y = floor_y - b.foot_height - leg_drop;
  const double x0 = pose.lateral_m;

  const auto set = [&](JointId id, double x, double y, double zz) {
    s[id] = {{x, y, zz}, TrackingState::kTracked};
  };
  set(JointId::kHipCenter, x0, hip_y, z);
  set(JointId::kSpine, x0, hip_y - 0.4 * b.torso, z);
  set(JointId::kShoulderCenter, x0, hip_y - b.torso, z);
  set(JointId::kHead, x0, hip_y - b.torso - b.neck - b.head_radius, z);

  for (int side = 0; side < 2; ++side) {
    const double dir = side == 0 ? 1.0 : -1.0;  // person's left appears on image right
    const bool left = side == 0;
    const double sx = x0 + dir * b.shoulder_half_width;
    const double sy = hip_y - b.torso + 0.03;
    const double ex = sx + dir * b.upper_arm * std::sin(as);
    const double ey = sy + b.upper_arm * std::cos(as);
    const double wx = ex + dir * b.forearm * std::sin(as);
    const double wy = ey + b.forearm * std::cos(as);
    const double hx = wx + dir * b.hand * std::sin(as);
    const double hy = wy + b.hand * std::cos(as);
    set(left ? JointId::kShoulderL : JointId::kShoulderR, sx, sy, z);
    set(left ? JointId::kElbowL : JointId::kElbowR, ex, ey, z);
    set(left ? JointId::kWristL : JointId::kWristR, wx, wy, z);
    set(left ? JointId::kHandL : JointId::kHandR, hx, hy, z);

    const double hipx = x0 + dir * b.hip_half_width;
    const double kx = hipx + dir * b.thigh * std::sin(ls);
    const double ky = hip_y + b.thigh * std::cos(ls);
    const double ax = kx + dir * b.shin * std::sin(ls);
    const double ay = ky + b.shin * std::cos(ls);
    set(left ? JointId::kHipL : JointId::kHipR, hipx, hip_y, z);
    set(left ? JointId::kKneeL : JointId::kKneeR, kx, ky, z);
    set(left ? JointId::kAnkleL : JointId::kAnkleR, ax, ay, z);
    set(left ? JointId::kFootL : JointId::kFootR, ax + dir * 0.03, floor_y - 0.02, z - 0.05);
  }
  return s;
}

void paint_background(cv::Mat& rgb, std::mt19937_64& rng) {
  const double base = uniform(rng, 70.0, 120.0);
  const double tint = uniform(rng, -15.0, 15.0);
  const double phase = uniform(rng, 0.0, 6.283);
  for (int y = 0; y < rgb.rows; ++y) {
    for (int x = 0; x < rgb.cols; ++x) {
      const double v = base + 12.0 * std::sin(0.07 * x + phase) + 0.15 * y;
      auto& px = rgb.at<cv::Vec3b>(y, x);
      px[0] = cv::saturate_cast<std::uint8_t>(v + tint);
      px[1] = cv::saturate_cast<std::uint8_t>(v);
      px[2] = cv::saturate_cast<std::uint8_t>(v - tint);
    }
  }
}

}  // namespace

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

double gaussian(std::mt19937_64& rng) {
  // Box-Muller; one draw per call keeps the stream layout simple.
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi_inclusive) {
  const auto span = static_cast<std::uint64_t>(hi_inclusive - lo + 1);
  return lo + static_cast<int>(rng() % span);
}

Calibration fixture_calibration(int width, int height) {
  Calibration c;
  c.width = width;
  c.height = height;
  c.fx = c.fy = 150.0 * height / 160.0;
  c.cx = width / 2.0;
  c.cy = height / 2.0;
  return c;
}

SubjectSpec random_subject(std::mt19937_64& rng, std::uint32_t subject_id, int palette_slot,
                           int palette_size) {
  SubjectSpec s;
  s.subject_id = subject_id;
  auto& b = s.body;
  const double scale = uniform(rng, 0.88, 1.12);
  const auto jitter = [&](double base) { return base * scale * uniform(rng, 0.85, 1.15); };
  b.head_radius = jitter(0.105);
  b.neck = jitter(0.06);
  b.torso = jitter(0.52);
  b.shoulder_half_width = jitter(0.19);
  b.hip_half_width = jitter(0.11);
  b.upper_arm = jitter(0.30);
  b.forearm = jitter(0.26);
  b.hand = jitter(0.08);
  b.thigh = jitter(0.44);
  b.shin = jitter(0.42);
  b.foot_height = 0.07 * scale;
  b.height = b.foot_height + b.thigh + b.shin + b.torso + b.neck + 2.0 * b.head_radius;

  static const char* kTops[] = {"t-shirt", "shirt", "sweater", "blouse", "top", "jacket"};
  static const char* kBottoms[] = {"jeans", "pants", "skirt", "shorts", "leggings"};
  static const char* kShoes[] = {"shoes", "boots", "sneakers"};

  const double slots = std::max(1, palette_size);
  const double hue = (palette_slot + uniform(rng, 0.0, 0.35)) / slots;
  const auto top_name = kTops[uniform_int(rng, 0, 5)];
  s.top.label = label(top_name);
  s.top.color = hsv_to_rgb(hue, uniform(rng, 0.55, 0.95), uniform(rng, 0.55, 0.95));
  s.top.stripes = static_cast<StripeAxis>(uniform_int(rng, 0, 2));
  s.top.stripe_period_m = uniform(rng, 0.05, 0.11);
  s.long_sleeves = std::string_view(top_name) != "t-shirt" && std::string_view(top_name) != "top";

  s.bottom.label = label(kBottoms[uniform_int(rng, 0, 4)]);
  s.bottom.color = hsv_to_rgb(hue + 0.5 + uniform(rng, -0.1, 0.1), uniform(rng, 0.3, 0.8),
                              uniform(rng, 0.25, 0.7));
  s.bottom.stripes = static_cast<StripeAxis>(uniform_int(rng, 0, 2));
  s.bottom.stripe_period_m = uniform(rng, 0.05, 0.11);
  for (Garment* g : {&s.top, &s.bottom}) {
    g->weave_period_px = uniform(rng, 2.5, 7.0);
    g->weave_angle_rad = uniform(rng, 0.0, std::numbers::pi);
    g->weave_amplitude = uniform(rng, 0.1, 0.25);
  }

  s.footwear.label = label(kShoes[uniform_int(rng, 0, 2)]);
  s.footwear.color = hsv_to_rgb(uniform01(rng), 0.3, uniform(rng, 0.1, 0.4));

  const double tone = uniform(rng, 0.45, 0.95);
  s.skin = {static_cast<std::uint8_t>(std::lround(235 * tone)),
            static_cast<std::uint8_t>(std::lround(180 * tone)),
            static_cast<std::uint8_t>(std::lround(150 * tone))};
  const double hair = uniform(rng, 0.08, 0.45);
  s.hair = {static_cast<std::uint8_t>(std::lround(180 * hair)),
            static_cast<std::uint8_t>(std::lround(120 * hair)),
            static_cast<std::uint8_t>(std::lround(70 * hair))};
  return s;
}

RenderedPerson render_person(const SubjectSpec& subject, const RenderPose& pose,
                             const Calibration& calib, std::mt19937_64& rng) {
  RenderedPerson out;
  out.rgb = cv::Mat(calib.height, calib.width, CV_8UC3);
  out.labels = cv::Mat(calib.height, calib.width, CV_16UC1,
                       cv::Scalar(Vocabulary::canonical().null()));
  out.mask = cv::Mat::zeros(calib.height, calib.width, CV_8UC1);
  paint_background(out.rgb, rng);

  out.skeleton = build_skeleton(subject.body, pose);
  if (pose.joint_noise_m > 0.0) {
    for (auto& j : out.skeleton.joints) {
      j.position.x += pose.joint_noise_m * gaussian(rng);
      j.position.y += pose.joint_noise_m * gaussian(rng);
      j.position.z += pose.joint_noise_m * gaussian(rng);
    }
  }
  out.pose = project(out.skeleton, calib);
  const auto P = [&](JointId id) { return out.pose[id].position; };

  const double ppm = calib.fx / pose.depth_m;
  Canvas canvas(out, ppm, P(JointId::kHipCenter));
  const auto& b = subject.body;

  Garment skin{Vocabulary::canonical().skin(), subject.skin, StripeAxis::kNone, 0.1};
  Garment hair{Vocabulary::canonical().hair(), subject.hair, StripeAxis::kNone, 0.1};
  const auto& vocab = Vocabulary::canonical();
  const bool bare_shins = subject.bottom.label == vocab.id("shorts") ||
                          subject.bottom.label == vocab.id("skirt");

  // Legs, then footwear, torso, arms and head: later primitives occlude.
  for (const bool left : {true, false}) {
    const auto hip = P(left ? JointId::kHipL : JointId::kHipR);
    const auto knee = P(left ? JointId::kKneeL : JointId::kKneeR);
    const auto ankle = P(left ? JointId::kAnkleL : JointId::kAnkleR);
    const auto foot = P(left ? JointId::kFootL : JointId::kFootR);
    canvas.capsule(knee, ankle, 0.05, bare_shins ? skin : subject.bottom);
    canvas.capsule(hip, knee, 0.075, subject.bottom);
    canvas.capsule(ankle, foot, 0.045, subject.footwear);
  }
  {
    const double sw = 0.03 * ppm;
    const double hw = 0.05 * ppm;
    const double pelvis = 0.05 * ppm;
    const auto sl = P(JointId::kShoulderL);
    const auto sr = P(JointId::kShoulderR);
    const auto hl = P(JointId::kHipL);
    const auto hr = P(JointId::kHipR);
    canvas.quad({Point2{sr.u - sw, sr.v - 0.02 * ppm}, Point2{sl.u + sw, sl.v - 0.02 * ppm},
                 Point2{hl.u + hw, hl.v + pelvis}, Point2{hr.u - hw, hr.v + pelvis}},
                subject.top);
  }
  for (const bool left : {true, false}) {
    const auto shoulder = P(left ? JointId::kShoulderL : JointId::kShoulderR);
    const auto elbow = P(left ? JointId::kElbowL : JointId::kElbowR);
    const auto wrist = P(left ? JointId::kWristL : JointId::kWristR);
    const auto hand = P(left ? JointId::kHandL : JointId::kHandR);
    canvas.capsule(wrist, hand, 0.035, skin);
    canvas.capsule(elbow, wrist, 0.04, subject.long_sleeves ? subject.top : skin);
    canvas.capsule(shoulder, elbow, 0.05, subject.top);
  }
  const auto head = P(JointId::kHead);
  canvas.capsule(P(JointId::kShoulderCenter), head, 0.045, skin);
  const double head_r = b.head_radius * ppm;
  canvas.disc(head, head_r * 1.08, hair, [&](Vec2 p) { return p.y < head.v - 0.15 * head_r; });
  canvas.disc(head, head_r, skin, [&](Vec2 p) { return p.y >= head.v - 0.15 * head_r; });

  if (pose.pixel_noise > 0.0) {
    for (int y = 0; y < out.rgb.rows; ++y) {
      for (int x = 0; x < out.rgb.cols; ++x) {
        auto& px = out.rgb.at<cv::Vec3b>(y, x);
        for (int c = 0; c < 3; ++c) {
          px[c] = cv::saturate_cast<std::uint8_t>(px[c] + pose.pixel_noise * gaussian(rng));
        }
      }
    }
  }

  out.depth = cv::Mat(calib.height, calib.width, CV_16UC1, cv::Scalar(kBackgroundDepthMm));
  const double person_mm = pose.depth_m * 1000.0;
  for (int y = 0; y < out.depth.rows; ++y) {
    for (int x = 0; x < out.depth.cols; ++x) {
      if (out.mask.at<std::uint8_t>(y, x) != 0) {
        out.depth.at<std::uint16_t>(y, x) =
            static_cast<std::uint16_t>(std::lround(person_mm + 4.0 * gaussian(rng)));
      }
    }
  }
  return out;
}

namespace {

RenderPose random_pose(std::mt19937_64& rng, const FixtureOptions& o) {
  RenderPose p;
  p.depth_m = uniform(rng, 2.05, 2.4);
  p.lateral_m = uniform(rng, -0.12, 0.12);
  p.arm_spread_rad = uniform(rng, 0.2, 0.32);
  p.leg_spread_rad = uniform(rng, 0.05, 0.11);
  p.joint_noise_m = o.joint_noise_m;
  p.pixel_noise = o.pixel_noise;
  return p;
}

void write_sequence(const fs::path& dir, const SubjectSpec& subject, int frames,
                    const Calibration& calib, const FixtureOptions& o, std::mt19937_64& rng) {
  fs::create_directories(dir);
  write_text_file(dir / "calib.json", dump_json(calibration_to_json(calib)));
  for (int f = 0; f < frames; ++f) {
    const auto pose = random_pose(rng, o);
    auto person = render_person(subject, pose, calib, rng);
    Frame frame;
    frame.rgb = person.rgb;
    frame.depth = person.depth;
    frame.person_mask = person.mask;
    frame.skeleton = person.skeleton;
    frame.face_detected = true;
    frame.calibration = calib;
    frame.frame_index = f;
    save_frame(dir, frame);
  }
}

TagSet clothing_tags(const SubjectSpec& s) { return {s.top.label, s.bottom.label, s.footwear.label}; }

std::string sequence_name(const char* fmt, int i) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, i);
  return buf;
}

}  // namespace

std::vector<SubjectSpec> generate_fixture(const fs::path& out_dir, const FixtureOptions& o) {
  if (o.subjects < 1) throw InvalidArgument("fixture needs at least one subject");
  if (o.frames_per_subject < 0 || o.probe_frames < 0 || o.annotated_images < 0) {
    throw InvalidArgument("fixture frame counts must be nonnegative");
  }
  std::mt19937_64 rng(o.seed);
  const auto calib = fixture_calibration(o.width, o.height);
  fs::create_directories(out_dir);

  std::vector<SubjectSpec> subjects;
  for (int i = 0; i < o.subjects; ++i) {
    subjects.push_back(random_subject(rng, static_cast<std::uint32_t>(i + 1), i, o.subjects));
  }

  std::map<std::string, std::uint32_t> identities;
  std::vector<GroundTruthTags> truth;
  for (int i = 0; i < o.subjects; ++i) {
    const auto& s = subjects[static_cast<std::size_t>(i)];
    const auto name = sequence_name("p%03d", i + 1);
    write_sequence(out_dir / "train" / name, s, o.frames_per_subject, calib, o, rng);
    identities[name] = s.subject_id;
    truth.push_back({name, clothing_tags(s)});
  }
  if (o.probe_frames > 0) {
    for (int i = 0; i < o.subjects; ++i) {
      auto probe = subjects[static_cast<std::size_t>(i)];
      if (o.permute_probe_colors) {
        const auto& donor = subjects[static_cast<std::size_t>((i + 1) % o.subjects)];
        for (auto [mine, theirs] : {std::pair{&probe.top, &donor.top},
                                    std::pair{&probe.bottom, &donor.bottom},
                                    std::pair{&probe.footwear, &donor.footwear}}) {
          const LabelId label = mine->label;
          *mine = *theirs;
          mine->label = label;
        }
      }
      const auto name = sequence_name("p%03d_probe", i + 1);
      write_sequence(out_dir / "test" / name, probe, o.probe_frames, calib, o, rng);
      identities[name] = probe.subject_id;
      truth.push_back({name, clothing_tags(probe)});
    }
  }
  write_text_file(out_dir / "identities.tsv", format_identities(identities));
  write_text_file(out_dir / "ground_truth.tsv", format_ground_truth(truth));

  if (o.annotated_images > 0) {
    const auto dir = out_dir / "annotated";
    fs::create_directories(dir);
    for (int k = 0; k < o.annotated_images; ++k) {
      const auto model = random_subject(rng, static_cast<std::uint32_t>(1000 + k), k, o.annotated_images);
      const auto person = render_person(model, random_pose(rng, o), calib, rng);
      AnnotatedImage img;
      img.image_id = sequence_name("fashion_%04d", k);
      img.rgb = person.rgb;
      img.labels = person.labels;
      img.tags = clothing_tags(model);
      img.pose = person.pose;
      save_annotated(dir, k, img);
    }
  }
  return subjects;
}

std::vector<SubjectSpec> generate_fixture(const fs::path& out_dir, std::uint64_t seed, int subjects,
                                          int frames_per_subject) {
  FixtureOptions o;
  o.seed = seed;
  o.subjects = subjects;
  o.frames_per_subject = frames_per_subject;
  o.annotated_images = 8;
  return generate_fixture(out_dir, o);
}

void generate_benchmark_layout(const fs::path& out_dir, std::uint64_t seed, int train_sequences,
                               int test_sequences) {
  FixtureOptions o;
  o.seed = seed;
  o.width = 48;
  o.height = 64;
  std::mt19937_64 rng(seed);
  const auto calib = fixture_calibration(o.width, o.height);
  std::map<std::string, std::uint32_t> identities;
  for (int i = 0; i < train_sequences; ++i) {
    const auto s = random_subject(rng, static_cast<std::uint32_t>(i + 1), i, train_sequences);
    const auto name = sequence_name("%04d", i + 1);
    write_sequence(out_dir / "train" / name, s, 1, calib, o, rng);
    identities[name] = s.subject_id;
  }
  // Test sequences come in still/walking pairs per person.
  for (int i = 0; i < test_sequences; ++i) {
    const auto subject_id = static_cast<std::uint32_t>(i / 2 + 1);
    const auto s = random_subject(rng, subject_id, i, test_sequences);
    const auto name = sequence_name(i % 2 == 0 ? "%04d_still" : "%04d_walking", i / 2 + 1);
    write_sequence(out_dir / "test" / name, s, 1, calib, o, rng);
    identities[name] = subject_id;
  }
  write_text_file(out_dir / "identities.tsv", format_identities(identities));
}

}  // namespace reid
