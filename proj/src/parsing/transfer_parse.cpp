#include "reid/parsing/transfer_parse.hpp"

#include <cmath>
#include <limits>

#include "reid/error.hpp"

namespace reid {

namespace {

double l2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

SuperpixelSet describe_superpixels(const FeatureMap& features, Segmentation segmentation, const Skeleton2D& pose,
                                   const BowVocabulary& vocabulary) {
  SuperpixelSet out;
  out.bow = bow_features(features, segmentation, vocabulary);
  out.sizes = segment_sizes(segmentation);
  const auto raw = segment_centroids(segmentation);
  out.centroids = pose_normalized(raw, pose, features.cols(), features.rows());
  out.segmentation = std::move(segmentation);
  return out;
}

std::vector<std::vector<double>> superpixel_label_means(const Segmentation& segmentation,
                                                        const LabelMaps& probabilities, const TagSet& tags) {
  if (probabilities.rows != segmentation.labels.rows || probabilities.cols != segmentation.labels.cols) {
    throw InvalidArgument("label maps and segmentation differ in size");
  }
  const std::size_t labels = probabilities.maps.size();
  std::vector<std::vector<double>> means(static_cast<std::size_t>(segmentation.count),
                                         std::vector<double>(labels, 0.0));
  std::vector<int> counts(static_cast<std::size_t>(segmentation.count), 0);
  for (int y = 0; y < segmentation.labels.rows; ++y) {
    for (int x = 0; x < segmentation.labels.cols; ++x) {
      const auto s = static_cast<std::size_t>(segmentation.labels.at<int>(y, x));
      ++counts[s];
      for (LabelId l : tags) {
        if (static_cast<std::size_t>(l) < labels) means[s][static_cast<std::size_t>(l)] += probabilities[l].at<double>(y, x);
      }
    }
  }
  for (std::size_t s = 0; s < means.size(); ++s) {
    if (counts[s] == 0) continue;
    for (auto& v : means[s]) v /= counts[s];
  }
  return means;
}

int match_superpixel(const Point2& centroid, std::span<const double> bow, const SuperpixelSet& retrieved,
                     double radius) {
  if (retrieved.centroids.empty()) throw InvalidArgument("retrieved image has no superpixels");
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < retrieved.centroids.size(); ++s) {
    const auto& c = retrieved.centroids[s];
    if (std::hypot(c.u - centroid.u, c.v - centroid.v) > radius) continue;
    const double d = l2(bow, retrieved.bow[s]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(s);
    }
  }
  if (best >= 0) return best;
  for (std::size_t s = 0; s < retrieved.centroids.size(); ++s) {
    const auto& c = retrieved.centroids[s];
    const double d = std::hypot(c.u - centroid.u, c.v - centroid.v);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(s);
    }
  }
  return best;
}

LabelMaps transfer_parse(const SuperpixelSet& query, std::span<const TransferSource> retrieved,
                         const TagSet& predicted, double radius) {
  const auto& seg = query.segmentation;
  LabelMaps out = LabelMaps::zeros(seg.labels.rows, seg.labels.cols);
  if (retrieved.empty()) {
    for (LabelId l : predicted) out[l].setTo(1.0);
    return out;
  }

  const std::size_t labels = out.maps.size();
  std::vector<std::vector<double>> score(static_cast<std::size_t>(seg.count), std::vector<double>(labels, 0.0));
  for (std::size_t s = 0; s < score.size(); ++s) {
    for (const auto& r : retrieved) {
      if (r.superpixels == nullptr || r.label_means == nullptr) throw InvalidArgument("transfer source without superpixels");
      const int m = match_superpixel(query.centroids[s], query.bow[s], *r.superpixels, radius);
      const double weight = 1.0 / (1.0 + l2(query.bow[s], r.superpixels->bow[static_cast<std::size_t>(m)]));
      const auto& means = r.label_means->at(static_cast<std::size_t>(m));
      for (std::size_t l = 0; l < labels; ++l) score[s][l] += means[l] * weight;
    }
    double peak = 0.0;
    for (double v : score[s]) peak = std::max(peak, v);
    if (peak > 0.0) {
      for (auto& v : score[s]) v /= peak;
    }
  }

  for (int y = 0; y < seg.labels.rows; ++y) {
    for (int x = 0; x < seg.labels.cols; ++x) {
      const auto& sc = score[static_cast<std::size_t>(seg.labels.at<int>(y, x))];
      for (std::size_t l = 0; l < labels; ++l) out.maps[l].at<double>(y, x) = sc[l];
    }
  }
  return out;
}

}  // namespace reid
