#pragma once

#include <span>
#include <vector>

#include <opencv2/core.hpp>

#include "reid/data/types.hpp"

namespace reid {

struct SegmentationParams {
  double k = 100.0;     // merge threshold scale
  double sigma = 0.5;   // pre-smoothing
  int min_size = 20;    // components smaller than this are merged away
};

struct Segmentation {
  cv::Mat labels;  // CV_32SC1, ids 0..count-1 numbered in raster order of first pixel
  int count = 0;
};

// Graph-based over-segmentation on the 8-connected pixel grid with Euclidean
// RGB edge weights. Deterministic.
Segmentation oversegment(const cv::Mat& rgb, const SegmentationParams& params = {});

// Pixel count per segment.
std::vector<int> segment_sizes(const Segmentation& segmentation);

// Mean (x, y) of each segment.
std::vector<Point2> segment_centroids(const Segmentation& segmentation);

// Centroids relative to the bounding box of the tracked pose joints:
// (c - box min) / box diagonal. A degenerate box falls back to the image.
std::vector<Point2> pose_normalized(std::span<const Point2> centroids, const Skeleton2D& pose, int width,
                                    int height);

}  // namespace reid
