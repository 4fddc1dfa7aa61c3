#include "reid/features/color_space.hpp"

#include <array>
#include <cmath>

namespace reid {

namespace {

// Linear sRGB -> XYZ (D65). The reference white is the image of RGB (1,1,1)
// so that white maps to a = b = 0 exactly.
constexpr double kM[3][3] = {{0.4124564, 0.3575761, 0.1804375},
                             {0.2126729, 0.7151522, 0.0721750},
                             {0.0193339, 0.1191920, 0.9503041}};
constexpr double kWhite[3] = {kM[0][0] + kM[0][1] + kM[0][2], kM[1][0] + kM[1][1] + kM[1][2],
                              kM[2][0] + kM[2][1] + kM[2][2]};

const std::array<double, 256>& linear_table() {
  static const std::array<double, 256> table = [] {
    std::array<double, 256> t{};
    for (int i = 0; i < 256; ++i) {
      const double c = i / 255.0;
      t[static_cast<std::size_t>(i)] = c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
    }
    return t;
  }();
  return table;
}

double lab_f(double t) {
  constexpr double delta = 6.0 / 29.0;
  return t > delta * delta * delta ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

}  // namespace

LabColor rgb_to_lab(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const auto& lin = linear_table();
  const double rl = lin[r];
  const double gl = lin[g];
  const double bl = lin[b];
  double xyz[3];
  for (int i = 0; i < 3; ++i) xyz[i] = kM[i][0] * rl + kM[i][1] * gl + kM[i][2] * bl;
  const double fx = lab_f(xyz[0] / kWhite[0]);
  const double fy = lab_f(xyz[1] / kWhite[1]);
  const double fz = lab_f(xyz[2] / kWhite[2]);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

cv::Mat rgb_to_lab(const cv::Mat& rgb) {
  CV_Assert(rgb.type() == CV_8UC3);
  cv::Mat lab(rgb.size(), CV_64FC3);
  for (int y = 0; y < rgb.rows; ++y) {
    const auto* src = rgb.ptr<cv::Vec3b>(y);
    auto* dst = lab.ptr<cv::Vec3d>(y);
    for (int x = 0; x < rgb.cols; ++x) {
      const auto c = rgb_to_lab(src[x][0], src[x][1], src[x][2]);
      dst[x] = {c.l, c.a, c.b};
    }
  }
  return lab;
}

double cie76(const LabColor& p, const LabColor& q) {
  return std::sqrt((p.l - q.l) * (p.l - q.l) + (p.a - q.a) * (p.a - q.a) + (p.b - q.b) * (p.b - q.b));
}

}  // namespace reid
