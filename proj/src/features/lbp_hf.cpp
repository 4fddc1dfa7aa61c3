#include "reid/features/lbp_hf.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "reid/error.hpp"

namespace reid {

namespace {

const std::array<int, 256>& uniform_table() {
  static const std::array<int, 256> table = [] {
    std::array<int, 256> t{};
    for (int code = 0; code < 256; ++code) {
      const auto p = static_cast<std::uint8_t>(code);
      const int transitions = std::popcount(static_cast<std::uint8_t>(p ^ std::rotr(p, 1)));
      const int ones = std::popcount(p);
      int bin = 58;
      if (ones == 0) {
        bin = 56;
      } else if (ones == 8) {
        bin = 57;
      } else if (transitions == 2) {
        const auto base = static_cast<std::uint8_t>((1u << ones) - 1u);
        for (int r = 0; r < 8; ++r) {
          if (std::rotl(base, r) == p) {
            bin = (ones - 1) * 8 + r;
            break;
          }
        }
      }
      t[static_cast<std::size_t>(code)] = bin;
    }
    return t;
  }();
  return table;
}

// Neighbor p sits at angle 2*pi*p/8 on the unit circle (image y points down).
// Diagonal samples use bilinear weights written so that the two edge-adjacent
// pixels enter as a sum; the result is then exactly equivariant under 90
// degree rotations of the image.
inline std::uint8_t lbp_pattern(const cv::Mat& g, int x, int y) {
  static const double d = std::numbers::sqrt2 / 2.0;
  static const double w_center = (1.0 - d) * (1.0 - d);
  static const double w_edge = d * (1.0 - d);
  static const double w_corner = d * d;
  static constexpr int kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
  static constexpr int kDy[8] = {0, -1, -1, -1, 0, 1, 1, 1};

  const double c = g.at<double>(y, x);
  std::uint8_t pattern = 0;
  for (int p = 0; p < 8; ++p) {
    const int dx = kDx[p];
    const int dy = kDy[p];
    double v;
    if (p % 2 == 0) {
      v = g.at<double>(y + dy, x + dx);
    } else {
      v = w_center * c + w_edge * (g.at<double>(y, x + dx) + g.at<double>(y + dy, x)) +
          w_corner * g.at<double>(y + dy, x + dx);
    }
    if (v >= c) pattern = static_cast<std::uint8_t>(pattern | (1u << p));
  }
  return pattern;
}

}  // namespace

int uniform_bin(std::uint8_t pattern) { return uniform_table()[pattern]; }

cv::Mat lbp_codes(const cv::Mat& gray) {
  CV_Assert(gray.type() == CV_64FC1);
  cv::Mat codes(gray.size(), CV_8UC1, cv::Scalar(kLbpInvalidCode));
  for (int y = 1; y + 1 < gray.rows; ++y) {
    auto* row = codes.ptr<std::uint8_t>(y);
    for (int x = 1; x + 1 < gray.cols; ++x) {
      row[x] = static_cast<std::uint8_t>(uniform_bin(lbp_pattern(gray, x, y)));
    }
  }
  return codes;
}

LbpHfVector lbp_hf_from_histogram(const LbpHistogram& hist) {
  // Twiddle factors indexed by (u * r) mod 8.
  static const auto twiddle = [] {
    std::array<std::array<double, 2>, kLbpSamples> t{};
    for (int k = 0; k < kLbpSamples; ++k) {
      const double angle = -2.0 * std::numbers::pi * k / kLbpSamples;
      t[static_cast<std::size_t>(k)] = {std::cos(angle), std::sin(angle)};
    }
    return t;
  }();
  LbpHfVector out{};
  std::size_t k = 0;
  for (int n = 1; n <= 7; ++n) {
    for (int u = 0; u <= kLbpSamples / 2; ++u) {
      double re = 0.0;
      double im = 0.0;
      for (int r = 0; r < kLbpSamples; ++r) {
        const double h = hist[static_cast<std::size_t>((n - 1) * 8 + r)];
        const auto& w = twiddle[static_cast<std::size_t>((u * r) % kLbpSamples)];
        re += h * w[0];
        im += h * w[1];
      }
      out[k++] = std::hypot(re, im);
    }
  }
  out[k++] = hist[56];
  out[k++] = hist[57];
  out[k++] = hist[58];
  return out;
}

LbpHfVector lbp_hf(const cv::Mat& gray, const cv::Rect& window) {
  if (window.width < 3 || window.height < 3) throw InvalidArgument("LBP-HF window must be at least 3x3");
  if ((window & cv::Rect(0, 0, gray.cols, gray.rows)) != window) {
    throw InvalidArgument("LBP-HF window must lie inside the image");
  }
  const cv::Mat patch = gray(window);
  LbpHistogram hist{};
  double count = 0.0;
  for (int y = 1; y + 1 < patch.rows; ++y) {
    for (int x = 1; x + 1 < patch.cols; ++x) {
      hist[static_cast<std::size_t>(uniform_bin(lbp_pattern(patch, x, y)))] += 1.0;
      count += 1.0;
    }
  }
  for (auto& h : hist) h /= count;
  return lbp_hf_from_histogram(hist);
}

FeatureMap lbp_hf_map(const cv::Mat& gray, int window) {
  if (window < 3) throw InvalidArgument("LBP-HF window must be at least 3");
  const cv::Mat codes = lbp_codes(gray);
  const int rows = gray.rows;
  const int cols = gray.cols;
  const int stride = cols + 1;

  // Integral histogram: one (rows+1) x (cols+1) count table per bin.
  std::vector<int> integral(static_cast<std::size_t>(rows + 1) * stride * kLbpUniformBins, 0);
  const auto cell = [&](int y, int x) {
    return integral.data() + (static_cast<std::size_t>(y) * stride + x) * kLbpUniformBins;
  };
  for (int y = 0; y < rows; ++y) {
    for (int x = 0; x < cols; ++x) {
      int* out = cell(y + 1, x + 1);
      const int* up = cell(y, x + 1);
      const int* left = cell(y + 1, x);
      const int* diag = cell(y, x);
      for (int b = 0; b < kLbpUniformBins; ++b) out[b] = up[b] + left[b] - diag[b];
      const auto code = codes.at<std::uint8_t>(y, x);
      if (code != kLbpInvalidCode) out[code] += 1;
    }
  }

  const int half = window / 2;
  FeatureMap map(rows, cols, kLbpHfDim);
  LbpHistogram hist{};
  for (int y = 0; y < rows; ++y) {
    const int y0 = std::max(0, y - half);
    const int y1 = std::min(rows, y - half + window);
    for (int x = 0; x < cols; ++x) {
      const int x0 = std::max(0, x - half);
      const int x1 = std::min(cols, x - half + window);
      const int* a = cell(y1, x1);
      const int* b = cell(y0, x1);
      const int* c = cell(y1, x0);
      const int* d = cell(y0, x0);
      double total = 0.0;
      for (int k = 0; k < kLbpUniformBins; ++k) {
        hist[static_cast<std::size_t>(k)] = a[k] - b[k] - c[k] + d[k];
        total += hist[static_cast<std::size_t>(k)];
      }
      if (total > 0.0) {
        for (auto& h : hist) h /= total;
      }
      const auto hf = lbp_hf_from_histogram(hist);
      std::copy(hf.begin(), hf.end(), map.pixel(y, x).begin());
    }
  }
  return map;
}

}  // namespace reid
