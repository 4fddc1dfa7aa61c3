#pragma once

#include <span>
#include <vector>

#include <opencv2/core.hpp>

#include "reid/parsing/combine.hpp"
#include "reid/parsing/nelder_mead.hpp"

namespace reid {

// One training image for the weight search: precomputed log-likelihoods and
// ground-truth labels. Foreground = ground truth other than null.
struct WeightSearchImage {
  LogLikelihoods scores;
  cv::Mat truth;  // CV_32SC1 label ids
};

struct AccuracyCounts {
  long long correct = 0;
  long long foreground = 0;
  double accuracy() const { return foreground == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(foreground); }
};

// Pixels of the ground-truth foreground whose MAP label matches, summed over
// the corpus in order.
AccuracyCounts foreground_accuracy(std::span<const WeightSearchImage> corpus, const ParseWeights& weights);

struct WeightSearchResult {
  ParseWeights weights;
  double accuracy = 0.0;
  NelderMeadResult search;
};

// Simplex search over (global, transfer) maximizing foreground accuracy from
// the initial simplex (1, 1), (1.5, 1), (1, 1.5). Throws InvalidArgument on
// an empty corpus.
WeightSearchResult optimize_weights(std::span<const WeightSearchImage> corpus, NelderMeadOptions options = {});

}  // namespace reid
