#pragma once

#include <cstdint>

#include <opencv2/core.hpp>

namespace reid {

struct LabColor {
  double l = 0.0;
  double a = 0.0;
  double b = 0.0;
};

// sRGB (8-bit, gamma encoded) -> linear sRGB -> XYZ -> CIE 1976 L*a*b*, D65.
LabColor rgb_to_lab(std::uint8_t r, std::uint8_t g, std::uint8_t b);

// Per-pixel conversion of a CV_8UC3 RGB image into CV_64FC3 (L, a, b).
cv::Mat rgb_to_lab(const cv::Mat& rgb);

// CIE76 color difference.
double cie76(const LabColor& p, const LabColor& q);

}  // namespace reid
