#include "reid/retrieval/kd_tree.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <utility>

#include "reid/error.hpp"

namespace reid {

namespace {

using Candidate = std::pair<double, std::size_t>;  // (squared distance, index)

// Max-heap on (d2, index): the top is the current worst of the k best.
using CandidateHeap = std::priority_queue<Candidate>;

void offer(CandidateHeap& heap, std::size_t k, double d2, std::size_t index) {
  if (heap.size() < k) {
    heap.emplace(d2, index);
  } else if (Candidate(d2, index) < heap.top()) {
    heap.pop();
    heap.emplace(d2, index);
  }
}

std::vector<Neighbor> drain(CandidateHeap& heap) {
  std::vector<Neighbor> out(heap.size());
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = {heap.top().second, std::sqrt(heap.top().first)};
    heap.pop();
  }
  return out;
}

double squared_distance(const double* a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace

KdIndex::KdIndex(std::vector<std::vector<double>> points) {
  if (points.empty()) throw InvalidArgument("cannot index an empty point set");
  dim_ = points.front().size();
  if (dim_ == 0) throw InvalidArgument("cannot index zero-dimensional points");
  count_ = points.size();
  data_.reserve(count_ * dim_);
  for (const auto& p : points) {
    if (p.size() != dim_) throw InvalidArgument("points differ in dimension");
    data_.insert(data_.end(), p.begin(), p.end());
  }
  order_.resize(count_);
  for (std::size_t i = 0; i < count_; ++i) order_[i] = i;
  build(0, count_, 1);
}

int KdIndex::build(std::size_t begin, std::size_t end, std::size_t level) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back({});
  nodes_[id].begin = begin;
  nodes_[id].end = end;
  depth_ = std::max(depth_, level);
  const std::size_t n = end - begin;
  if (n <= kLeafSize) return id;

  std::size_t best_dim = 0;
  double best_spread = -1.0;
  for (std::size_t d = 0; d < dim_; ++d) {
    double lo = point(order_[begin])[d];
    double hi = lo;
    for (std::size_t i = begin + 1; i < end; ++i) {
      const double v = point(order_[i])[d];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi - lo > best_spread) {
      best_spread = hi - lo;
      best_dim = d;
    }
  }

  const std::size_t m = (n - 1) / 2;
  auto key = [&](std::size_t idx) { return std::make_pair(point(idx)[best_dim], idx); };
  std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                   order_.begin() + static_cast<std::ptrdiff_t>(begin + m),
                   order_.begin() + static_cast<std::ptrdiff_t>(end),
                   [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  const double split = point(order_[begin + m])[best_dim];

  const int left = build(begin, begin + m + 1, level + 1);
  const int right = build(begin + m + 1, end, level + 1);
  nodes_[id].split_dim = static_cast<int>(best_dim);
  nodes_[id].split_value = split;
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

std::vector<Neighbor> KdIndex::knn(std::span<const double> query, std::size_t k) const {
  if (query.size() != dim_) {
    throw InvalidArgument("query has dimension " + std::to_string(query.size()) + ", index expects " +
                          std::to_string(dim_));
  }
  k = std::min(k, count_);
  CandidateHeap heap;
  if (k == 0) return {};

  std::vector<std::pair<int, double>> stack{{0, 0.0}};  // (node, squared plane distance bound)
  while (!stack.empty()) {
    const auto [id, bound] = stack.back();
    stack.pop_back();
    if (heap.size() == k && bound > heap.top().first) continue;
    const Node& node = nodes_[static_cast<std::size_t>(id)];
    if (node.split_dim < 0) {
      for (std::size_t i = node.begin; i < node.end; ++i) {
        offer(heap, k, squared_distance(point(order_[i]), query), order_[i]);
      }
      continue;
    }
    const double diff = query[static_cast<std::size_t>(node.split_dim)] - node.split_value;
    const int near = diff <= 0.0 ? node.left : node.right;
    const int far = diff <= 0.0 ? node.right : node.left;
    stack.emplace_back(far, std::max(bound, diff * diff));
    stack.emplace_back(near, bound);
  }
  return drain(heap);
}

std::size_t KdIndex::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.split_dim < 0; }));
}

std::size_t KdIndex::max_leaf_size() const {
  std::size_t best = 0;
  for (const auto& n : nodes_) {
    if (n.split_dim < 0) best = std::max(best, n.end - n.begin);
  }
  return best;
}

std::vector<Neighbor> linear_knn(std::span<const std::vector<double>> points, std::span<const double> query,
                                 std::size_t k) {
  CandidateHeap heap;
  k = std::min(k, points.size());
  if (k == 0) return {};
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != query.size()) throw InvalidArgument("query dimension mismatch");
    offer(heap, k, squared_distance(points[i].data(), query), i);
  }
  return drain(heap);
}

}  // namespace reid
