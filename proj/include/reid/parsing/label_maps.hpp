#pragma once

#include <vector>

#include <opencv2/core.hpp>

#include "reid/data/vocabulary.hpp"

namespace reid {

// One CV_64FC1 map per vocabulary label.
struct LabelMaps {
  int rows = 0;
  int cols = 0;
  std::vector<cv::Mat> maps;

  static LabelMaps zeros(int rows, int cols, std::size_t labels = Vocabulary::kSize) {
    LabelMaps m;
    m.rows = rows;
    m.cols = cols;
    for (std::size_t l = 0; l < labels; ++l) m.maps.push_back(cv::Mat::zeros(rows, cols, CV_64FC1));
    return m;
  }

  cv::Mat& operator[](LabelId l) { return maps.at(static_cast<std::size_t>(l)); }
  const cv::Mat& operator[](LabelId l) const { return maps.at(static_cast<std::size_t>(l)); }
};

}  // namespace reid
