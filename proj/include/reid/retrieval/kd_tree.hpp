#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace reid {

struct Neighbor {
  std::size_t index = 0;  // position of the point in the build input
  double distance = 0.0;  // Euclidean
};

// Exact k-nearest-neighbor index. Splits on the dimension of largest spread
// at the lower median; leaves hold at most kLeafSize points. Results are
// ordered by distance, ties by ascending point index.
class KdIndex {
 public:
  static constexpr std::size_t kLeafSize = 16;

  // Throws InvalidArgument when `points` is empty or ragged.
  explicit KdIndex(std::vector<std::vector<double>> points);

  std::vector<Neighbor> knn(std::span<const double> query, std::size_t k) const;

  std::size_t size() const { return count_; }
  std::size_t dim() const { return dim_; }
  // Number of node levels; a lone leaf has depth 1.
  std::size_t depth() const { return depth_; }
  std::size_t leaf_count() const;
  std::size_t max_leaf_size() const;

 private:
  struct Node {
    int split_dim = -1;  // -1 for leaves
    double split_value = 0.0;
    int left = -1;
    int right = -1;
    std::size_t begin = 0;
    std::size_t end = 0;
  };

  int build(std::size_t begin, std::size_t end, std::size_t level);
  const double* point(std::size_t index) const { return data_.data() + index * dim_; }

  std::size_t dim_ = 0;
  std::size_t count_ = 0;
  std::size_t depth_ = 0;
  std::vector<double> data_;         // row-major points
  std::vector<std::size_t> order_;   // leaf ranges index into this permutation
  std::vector<Node> nodes_;
};

// Reference exhaustive search with the same ordering rule.
std::vector<Neighbor> linear_knn(std::span<const std::vector<double>> points, std::span<const double> query,
                                 std::size_t k);

}  // namespace reid
