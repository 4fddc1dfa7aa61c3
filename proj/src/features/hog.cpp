#include "reid/features/hog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "reid/error.hpp"

namespace reid {

void image_gradients(const cv::Mat& gray, cv::Mat& gx, cv::Mat& gy) {
  CV_Assert(gray.type() == CV_64FC1);
  gx.create(gray.size(), CV_64FC1);
  gy.create(gray.size(), CV_64FC1);
  const int w = gray.cols;
  const int h = gray.rows;
  for (int y = 0; y < h; ++y) {
    const int ym = std::max(0, y - 1);
    const int yp = std::min(h - 1, y + 1);
    for (int x = 0; x < w; ++x) {
      const int xm = std::max(0, x - 1);
      const int xp = std::min(w - 1, x + 1);
      gx.at<double>(y, x) = 0.5 * (gray.at<double>(y, xp) - gray.at<double>(y, xm));
      gy.at<double>(y, x) = 0.5 * (gray.at<double>(yp, x) - gray.at<double>(ym, x));
    }
  }
}

HogCells hog_cell_histograms(const cv::Mat& gray, const HogParams& params) {
  if (params.cell_size < 1 || params.bins < 2) throw InvalidArgument("invalid HOG parameters");
  if (gray.cols < params.cell_size || gray.rows < params.cell_size) {
    throw InvalidArgument("HOG needs an image of at least one cell");
  }
  cv::Mat gx, gy;
  image_gradients(gray, gx, gy);

  HogCells cells;
  cells.cells_x = gray.cols / params.cell_size;
  cells.cells_y = gray.rows / params.cell_size;
  cells.bins = params.bins;
  cells.values.assign(static_cast<std::size_t>(cells.cells_x) * cells.cells_y * params.bins, 0.0);

  const double bin_width = 180.0 / params.bins;
  for (int y = 0; y < gray.rows; ++y) {
    const int cy = std::min(y / params.cell_size, cells.cells_y - 1);
    for (int x = 0; x < gray.cols; ++x) {
      const int cx = std::min(x / params.cell_size, cells.cells_x - 1);
      const double dx = gx.at<double>(y, x);
      const double dy = gy.at<double>(y, x);
      const double mag = std::hypot(dx, dy);
      if (mag == 0.0) continue;
      double angle = std::atan2(dy, dx) * 180.0 / std::numbers::pi;
      if (angle < 0.0) angle += 180.0;
      if (angle >= 180.0) angle -= 180.0;
      const double t = angle / bin_width;
      const int b0 = static_cast<int>(std::floor(t)) % params.bins;
      const int b1 = (b0 + 1) % params.bins;
      const double frac = t - std::floor(t);
      cells.at(cy, cx, b0) += (1.0 - frac) * mag;
      cells.at(cy, cx, b1) += frac * mag;
    }
  }
  return cells;
}

HogCells hog(const cv::Mat& gray, const HogParams& params) {
  const HogCells raw = hog_cell_histograms(gray, params);
  HogCells out = raw;
  std::fill(out.values.begin(), out.values.end(), 0.0);
  std::vector<int> block_count(static_cast<std::size_t>(raw.cells_x) * raw.cells_y, 0);

  // Blocks of up to 2x2 cells, stride one cell.
  const int bw = std::min(2, raw.cells_x);
  const int bh = std::min(2, raw.cells_y);
  constexpr double kEps = 1e-3;
  std::vector<double> block;
  for (int by = 0; by + bh <= raw.cells_y; ++by) {
    for (int bx = 0; bx + bw <= raw.cells_x; ++bx) {
      block.clear();
      for (int cy = by; cy < by + bh; ++cy) {
        for (int cx = bx; cx < bx + bw; ++cx) {
          for (int b = 0; b < raw.bins; ++b) block.push_back(raw.at(cy, cx, b));
        }
      }
      const auto normalize = [&] {
        double ss = 0.0;
        for (double v : block) ss += v * v;
        const double norm = std::sqrt(ss + kEps * kEps);
        for (double& v : block) v /= norm;
      };
      normalize();
      for (double& v : block) v = std::min(v, params.clip);
      normalize();

      std::size_t k = 0;
      for (int cy = by; cy < by + bh; ++cy) {
        for (int cx = bx; cx < bx + bw; ++cx) {
          for (int b = 0; b < raw.bins; ++b) out.at(cy, cx, b) += block[k++];
          ++block_count[static_cast<std::size_t>(cy) * raw.cells_x + cx];
        }
      }
    }
  }
  for (int cy = 0; cy < out.cells_y; ++cy) {
    for (int cx = 0; cx < out.cells_x; ++cx) {
      const int n = block_count[static_cast<std::size_t>(cy) * out.cells_x + cx];
      for (int b = 0; b < out.bins; ++b) out.at(cy, cx, b) /= n;
    }
  }
  return out;
}

FeatureMap hog_map(const cv::Mat& gray, const HogParams& params) {
  const HogCells cells = hog(gray, params);
  FeatureMap map(gray.rows, gray.cols, cells.bins);
  const double cs = params.cell_size;
  // Continuous cell coordinate of a pixel; cell k is centered at (k + 0.5) * cs - 0.5.
  const auto locate = [cs](int p, int n, int& i0, int& i1, double& f) {
    double t = (p + 0.5) / cs - 0.5;
    t = std::clamp(t, 0.0, static_cast<double>(n - 1));
    i0 = static_cast<int>(std::floor(t));
    i1 = std::min(i0 + 1, n - 1);
    f = t - i0;
  };
  for (int y = 0; y < gray.rows; ++y) {
    int y0, y1;
    double fy;
    locate(y, cells.cells_y, y0, y1, fy);
    for (int x = 0; x < gray.cols; ++x) {
      int x0, x1;
      double fx;
      locate(x, cells.cells_x, x0, x1, fx);
      auto px = map.pixel(y, x);
      for (int b = 0; b < cells.bins; ++b) {
        px[static_cast<std::size_t>(b)] =
            (1 - fy) * ((1 - fx) * cells.at(y0, x0, b) + fx * cells.at(y0, x1, b)) +
            fy * ((1 - fx) * cells.at(y1, x0, b) + fx * cells.at(y1, x1, b));
      }
    }
  }
  return map;
}

}  // namespace reid
