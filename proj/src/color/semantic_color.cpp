#include "reid/color/semantic_color.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "reid/assets.hpp"
#include "reid/error.hpp"

namespace reid {

namespace {

constexpr std::array<std::string_view, kColorTermCount> kTermNames = {
    "black", "white", "red", "green", "yellow", "blue", "brown", "orange", "pink", "purple", "gray"};

constexpr int kBins = 16;

std::uint8_t to_byte(double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

}  // namespace

std::string_view color_term_name(ColorTerm term) { return kTermNames.at(static_cast<std::size_t>(term)); }

std::optional<ColorTerm> color_term_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kTermNames.size(); ++i) {
    if (kTermNames[i] == name) return static_cast<ColorTerm>(i);
  }
  return std::nullopt;
}

std::vector<X11Anchor> parse_anchors(std::string_view text) {
  std::vector<X11Anchor> out;
  std::array<bool, kColorTermCount> seen{};
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string name;
    int r = -1, g = -1, b = -1;
    if (!(fields >> name >> r >> g >> b) || r < 0 || r > 255 || g < 0 || g > 255 || b < 0 || b > 255) {
      throw DataError("color anchors line " + std::to_string(line_no) + ": expected `term R G B`");
    }
    const auto term = color_term_from_name(name);
    if (!term) throw DataError("color anchors line " + std::to_string(line_no) + ": unknown term " + name);
    if (seen[static_cast<std::size_t>(*term)]) throw DataError("color anchors: duplicate term " + name);
    seen[static_cast<std::size_t>(*term)] = true;
    const std::array<std::uint8_t, 3> rgb{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                                          static_cast<std::uint8_t>(b)};
    out.push_back({*term, rgb, rgb_to_lab(rgb[0], rgb[1], rgb[2])});
  }
  if (out.size() != kColorTermCount) throw DataError("color anchors: expected 11 terms");
  return out;
}

const std::vector<X11Anchor>& x11_anchors() {
  static const std::vector<X11Anchor> anchors = parse_anchors(assets::kX11AnchorsTxt);
  return anchors;
}

Rgb dominant_color(const cv::Mat& rgb, const cv::Mat& mask) {
  if (rgb.type() != CV_8UC3 || mask.type() != CV_8UC1 || rgb.size() != mask.size()) {
    throw InvalidArgument("dominant_color expects an RGB image and a same-sized 8-bit mask");
  }
  constexpr int cells = kBins * kBins * kBins;
  std::vector<int> counts(cells, 0);
  std::vector<std::array<double, 3>> sums(cells, {0.0, 0.0, 0.0});
  for (int y = 0; y < rgb.rows; ++y) {
    for (int x = 0; x < rgb.cols; ++x) {
      if (mask.at<std::uint8_t>(y, x) == 0) continue;
      const auto& p = rgb.at<cv::Vec3b>(y, x);
      const int cell = ((p[0] / kBins) * kBins + p[1] / kBins) * kBins + p[2] / kBins;
      ++counts[static_cast<std::size_t>(cell)];
      for (int c = 0; c < 3; ++c) sums[static_cast<std::size_t>(cell)][static_cast<std::size_t>(c)] += p[c];
    }
  }
  int best = 0;
  for (int i = 1; i < cells; ++i) {
    if (counts[static_cast<std::size_t>(i)] > counts[static_cast<std::size_t>(best)]) best = i;
  }
  const int n = counts[static_cast<std::size_t>(best)];
  if (n == 0) throw InvalidArgument("dominant_color: mask is empty");
  const auto& s = sums[static_cast<std::size_t>(best)];
  return {s[0] / n, s[1] / n, s[2] / n};
}

ColorTerm name_color(const Rgb& color, NamingSpace space) {
  const auto& anchors = x11_anchors();
  const std::uint8_t r = to_byte(color.r);
  const std::uint8_t g = to_byte(color.g);
  const std::uint8_t b = to_byte(color.b);
  const LabColor lab = rgb_to_lab(r, g, b);
  ColorTerm best = anchors.front().term;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& a : anchors) {
    double d;
    if (space == NamingSpace::kLab) {
      d = cie76(lab, a.lab);
    } else {
      d = std::hypot(color.r - a.rgb[0], color.g - a.rgb[1], color.b - a.rgb[2]);
    }
    if (d < best_d) {
      best_d = d;
      best = a.term;
    }
  }
  return best;
}

}  // namespace reid
