#include "reid/parsing/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "reid/error.hpp"

namespace reid {

namespace {

struct Edge {
  int a;
  int b;
  double w;
};

class DisjointSet {
 public:
  explicit DisjointSet(int n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1),
                                internal_(static_cast<std::size_t>(n), 0.0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }

  // Joins two roots; the root with the lower index survives so that the
  // result does not depend on union order heuristics.
  int join(int a, int b, double w) {
    if (a > b) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
    internal_[static_cast<std::size_t>(a)] = w;
    return a;
  }

  int size(int root) const { return size_[static_cast<std::size_t>(root)]; }
  double internal(int root) const { return internal_[static_cast<std::size_t>(root)]; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  std::vector<double> internal_;
};

// Separable Gaussian with replicated borders; kernel radius ceil(4 sigma).
cv::Mat smooth(const cv::Mat& rgb, double sigma) {
  cv::Mat src;
  rgb.convertTo(src, CV_64FC3);
  if (sigma <= 0.0) return src;
  const int radius = static_cast<int>(std::ceil(4.0 * sigma));
  std::vector<double> kernel(static_cast<std::size_t>(radius + 1));
  double total = 0.0;
  for (int i = 0; i <= radius; ++i) {
    kernel[static_cast<std::size_t>(i)] = std::exp(-0.5 * (i / sigma) * (i / sigma));
    total += i == 0 ? kernel[0] : 2.0 * kernel[static_cast<std::size_t>(i)];
  }
  for (auto& k : kernel) k /= total;

  const int rows = src.rows;
  const int cols = src.cols;
  cv::Mat tmp(rows, cols, CV_64FC3);
  cv::Mat out(rows, cols, CV_64FC3);
  for (int y = 0; y < rows; ++y) {
    for (int x = 0; x < cols; ++x) {
      cv::Vec3d acc = kernel[0] * src.at<cv::Vec3d>(y, x);
      for (int i = 1; i <= radius; ++i) {
        acc += kernel[static_cast<std::size_t>(i)] *
               (src.at<cv::Vec3d>(y, std::max(x - i, 0)) + src.at<cv::Vec3d>(y, std::min(x + i, cols - 1)));
      }
      tmp.at<cv::Vec3d>(y, x) = acc;
    }
  }
  for (int y = 0; y < rows; ++y) {
    for (int x = 0; x < cols; ++x) {
      cv::Vec3d acc = kernel[0] * tmp.at<cv::Vec3d>(y, x);
      for (int i = 1; i <= radius; ++i) {
        acc += kernel[static_cast<std::size_t>(i)] *
               (tmp.at<cv::Vec3d>(std::max(y - i, 0), x) + tmp.at<cv::Vec3d>(std::min(y + i, rows - 1), x));
      }
      out.at<cv::Vec3d>(y, x) = acc;
    }
  }
  return out;
}

}  // namespace

Segmentation oversegment(const cv::Mat& rgb, const SegmentationParams& params) {
  if (rgb.empty() || rgb.type() != CV_8UC3) throw InvalidArgument("oversegment expects an 8-bit RGB image");
  if (params.k < 0.0 || params.min_size < 0) throw InvalidArgument("invalid segmentation parameters");
  const cv::Mat img = smooth(rgb, params.sigma);
  const int rows = img.rows;
  const int cols = img.cols;

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(rows) * cols * 4);
  auto weight = [&](int y0, int x0, int y1, int x1) { return cv::norm(img.at<cv::Vec3d>(y0, x0) - img.at<cv::Vec3d>(y1, x1)); };
  for (int y = 0; y < rows; ++y) {
    for (int x = 0; x < cols; ++x) {
      const int p = y * cols + x;
      if (x + 1 < cols) edges.push_back({p, p + 1, weight(y, x, y, x + 1)});
      if (y + 1 < rows) edges.push_back({p, p + cols, weight(y, x, y + 1, x)});
      if (x + 1 < cols && y + 1 < rows) edges.push_back({p, p + cols + 1, weight(y, x, y + 1, x + 1)});
      if (x + 1 < cols && y > 0) edges.push_back({p, p - cols + 1, weight(y, x, y - 1, x + 1)});
    }
  }
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.w < b.w; });

  DisjointSet sets(rows * cols);
  for (const auto& e : edges) {
    const int a = sets.find(e.a);
    const int b = sets.find(e.b);
    if (a == b) continue;
    const double ta = sets.internal(a) + params.k / sets.size(a);
    const double tb = sets.internal(b) + params.k / sets.size(b);
    if (e.w <= std::min(ta, tb)) sets.join(a, b, e.w);
  }
  for (const auto& e : edges) {
    const int a = sets.find(e.a);
    const int b = sets.find(e.b);
    if (a != b && (sets.size(a) < params.min_size || sets.size(b) < params.min_size)) {
      sets.join(a, b, std::max({e.w, sets.internal(a), sets.internal(b)}));
    }
  }

  Segmentation out;
  out.labels.create(rows, cols, CV_32SC1);
  std::vector<int> ids(static_cast<std::size_t>(rows) * cols, -1);
  for (int p = 0; p < rows * cols; ++p) {
    auto& id = ids[static_cast<std::size_t>(sets.find(p))];
    if (id < 0) id = out.count++;
    out.labels.at<int>(p / cols, p % cols) = id;
  }
  return out;
}

std::vector<int> segment_sizes(const Segmentation& segmentation) {
  std::vector<int> sizes(static_cast<std::size_t>(segmentation.count), 0);
  for (int y = 0; y < segmentation.labels.rows; ++y) {
    for (int x = 0; x < segmentation.labels.cols; ++x) ++sizes[static_cast<std::size_t>(segmentation.labels.at<int>(y, x))];
  }
  return sizes;
}

std::vector<Point2> segment_centroids(const Segmentation& segmentation) {
  std::vector<Point2> sums(static_cast<std::size_t>(segmentation.count));
  std::vector<int> counts(static_cast<std::size_t>(segmentation.count), 0);
  for (int y = 0; y < segmentation.labels.rows; ++y) {
    for (int x = 0; x < segmentation.labels.cols; ++x) {
      const auto id = static_cast<std::size_t>(segmentation.labels.at<int>(y, x));
      sums[id].u += x;
      sums[id].v += y;
      ++counts[id];
    }
  }
  for (std::size_t i = 0; i < sums.size(); ++i) {
    if (counts[i] == 0) continue;
    sums[i].u /= counts[i];
    sums[i].v /= counts[i];
  }
  return sums;
}

std::vector<Point2> pose_normalized(std::span<const Point2> centroids, const Skeleton2D& pose, int width,
                                    int height) {
  double u0 = 0.0, v0 = 0.0, u1 = width - 1.0, v1 = height - 1.0;
  bool any = false;
  for (const auto& j : pose.joints) {
    if (j.state == TrackingState::kNotTracked) continue;
    if (!any) {
      u0 = u1 = j.position.u;
      v0 = v1 = j.position.v;
      any = true;
    }
    u0 = std::min(u0, j.position.u);
    u1 = std::max(u1, j.position.u);
    v0 = std::min(v0, j.position.v);
    v1 = std::max(v1, j.position.v);
  }
  double diag = std::hypot(u1 - u0, v1 - v0);
  if (diag <= 0.0) {
    u0 = v0 = 0.0;
    diag = std::hypot(width - 1.0, height - 1.0);
    if (diag <= 0.0) diag = 1.0;
  }
  std::vector<Point2> out;
  out.reserve(centroids.size());
  for (const auto& c : centroids) out.push_back({(c.u - u0) / diag, (c.v - v0) / diag});
  return out;
}

}  // namespace reid
