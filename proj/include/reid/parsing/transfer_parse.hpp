#pragma once

#include <span>
#include <vector>

#include "reid/data/types.hpp"
#include "reid/features/feature_map.hpp"
#include "reid/parsing/bag_of_words.hpp"
#include "reid/parsing/label_maps.hpp"
#include "reid/parsing/segmentation.hpp"

namespace reid {

// An over-segmented image with what the transfer stage matches on.
struct SuperpixelSet {
  Segmentation segmentation;
  std::vector<int> sizes;
  std::vector<Point2> centroids;         // pose-normalized
  std::vector<std::vector<double>> bow;  // one histogram per superpixel
};

SuperpixelSet describe_superpixels(const FeatureMap& features, Segmentation segmentation, const Skeleton2D& pose,
                                   const BowVocabulary& vocabulary);

// M(l, s): mean over the pixels of s of P(y = l), zero for labels outside
// `tags`. Row per superpixel, column per vocabulary label.
std::vector<std::vector<double>> superpixel_label_means(const Segmentation& segmentation,
                                                        const LabelMaps& probabilities, const TagSet& tags);

// A retrieved image: its superpixels and label means.
struct TransferSource {
  const SuperpixelSet* superpixels = nullptr;
  const std::vector<std::vector<double>>* label_means = nullptr;
};

// Superpixels of `retrieved` whose normalized centroid lies within `radius`
// of `centroid` compete on BoW distance (ties to the lowest id). With no
// candidate in range the nearest centroid wins. Throws InvalidArgument when
// `retrieved` has no superpixels.
int match_superpixel(const Point2& centroid, std::span<const double> bow, const SuperpixelSet& retrieved,
                     double radius);

// sum_r M(l, s_r) / (1 + |h(s) - h(s_r)|) per query superpixel, divided by
// its maximum over labels so every pixel peaks at 1 (an all-zero pixel stays
// 0). With no retrieved images every label in `predicted` scores 1.
LabelMaps transfer_parse(const SuperpixelSet& query, std::span<const TransferSource> retrieved,
                         const TagSet& predicted, double radius = 0.25);

}  // namespace reid
