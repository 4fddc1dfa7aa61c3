#pragma once

#include <vector>

#include <opencv2/core.hpp>

#include "reid/features/feature_map.hpp"

namespace reid {

struct HogParams {
  int cell_size = 8;
  int bins = 9;
  double clip = 0.2;
};

// Histograms indexed (cell_y, cell_x, bin).
struct HogCells {
  int cells_x = 0;
  int cells_y = 0;
  int bins = 0;
  std::vector<double> values;

  double& at(int cy, int cx, int b) { return values[(static_cast<std::size_t>(cy) * cells_x + cx) * bins + b]; }
  double at(int cy, int cx, int b) const { return values[(static_cast<std::size_t>(cy) * cells_x + cx) * bins + b]; }
};

// Central-difference image derivatives (half the [-1 0 1] response) with
// replicated borders. Outputs CV_64FC1.
void image_gradients(const cv::Mat& gray, cv::Mat& gx, cv::Mat& gy);

// Unnormalized per-cell histograms of unsigned orientation (0..180 degrees)
// weighted by gradient magnitude, with linear interpolation between the two
// nearest bin centers (bin b centered at b*180/bins). Pixels beyond the last
// full cell fold into the last cell.
HogCells hog_cell_histograms(const cv::Mat& gray, const HogParams& params = {});

// Cell histograms after L2-Hys normalization over 2x2-cell blocks (stride 1);
// each cell averages its normalized copies over the blocks containing it.
HogCells hog(const cv::Mat& gray, const HogParams& params = {});

// Per-pixel HOG: bilinear interpolation of normalized cell histograms between
// cell centers.
FeatureMap hog_map(const cv::Mat& gray, const HogParams& params = {});

}  // namespace reid
