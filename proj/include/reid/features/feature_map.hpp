#pragma once

#include <cassert>
#include <span>
#include <vector>

namespace reid {

// Dense H x W x C array of doubles, channel-last row-major.
class FeatureMap {
 public:
  FeatureMap() = default;
  FeatureMap(int rows, int cols, int channels, double fill = 0.0)
      : rows_(rows), cols_(cols), channels_(channels),
        data_(static_cast<std::size_t>(rows) * cols * channels, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int channels() const { return channels_; }
  bool empty() const { return data_.empty(); }

  double& at(int y, int x, int c) { return data_[index(y, x) + static_cast<std::size_t>(c)]; }
  double at(int y, int x, int c) const { return data_[index(y, x) + static_cast<std::size_t>(c)]; }

  std::span<double> pixel(int y, int x) {
    return {data_.data() + index(y, x), static_cast<std::size_t>(channels_)};
  }
  std::span<const double> pixel(int y, int x) const {
    return {data_.data() + index(y, x), static_cast<std::size_t>(channels_)};
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

 private:
  std::size_t index(int y, int x) const {
    assert(y >= 0 && y < rows_ && x >= 0 && x < cols_);
    return (static_cast<std::size_t>(y) * cols_ + x) * channels_;
  }

  int rows_ = 0;
  int cols_ = 0;
  int channels_ = 0;
  std::vector<double> data_;
};

}  // namespace reid
