#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <opencv2/core.hpp>

#include "reid/features/color_space.hpp"

namespace reid {

enum class ColorTerm : std::uint8_t {
  kBlack = 0,
  kWhite,
  kRed,
  kGreen,
  kYellow,
  kBlue,
  kBrown,
  kOrange,
  kPink,
  kPurple,
  kGray,
};

inline constexpr std::size_t kColorTermCount = 11;

std::string_view color_term_name(ColorTerm term);
std::optional<ColorTerm> color_term_from_name(std::string_view name);

struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
};

struct X11Anchor {
  ColorTerm term;
  std::array<std::uint8_t, 3> rgb;
  LabColor lab;
};

// Parses `term R G B` lines; requires every term exactly once.
std::vector<X11Anchor> parse_anchors(std::string_view text);

// The anchor table compiled in from assets/x11_anchors.txt, in file order.
const std::vector<X11Anchor>& x11_anchors();

enum class NamingSpace { kLab, kRgb };

// Mean RGB of the mask pixels falling in the most populated cell of a
// 16x16x16 RGB histogram (ties to the lowest cell index). Throws
// InvalidArgument when the mask is empty.
Rgb dominant_color(const cv::Mat& rgb, const cv::Mat& mask);

// Nearest anchor, CIE76 in Lab or Euclidean in RGB; ties to table order.
// Fractional values are rounded to 8 bits before the Lab conversion.
ColorTerm name_color(const Rgb& color, NamingSpace space = NamingSpace::kLab);

}  // namespace reid
