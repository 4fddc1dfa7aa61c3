#pragma once

#include <map>
#include <vector>

#include <opencv2/core.hpp>

#include "reid/data/types.hpp"
#include "reid/parsing/label_maps.hpp"

namespace reid {

// Exponents of the global and transferred likelihoods.
struct ParseWeights {
  double global = 1.0;
  double transfer = 1.0;

  bool valid() const { return global >= 0.0 && transfer >= 0.0 && (global > 0.0 || transfer > 0.0); }
};

// Labels the MAP may choose from: the predicted tags plus skin, hair, null.
TagSet parse_label_set(const TagSet& predicted);

// Log-likelihoods of the candidate labels, precomputed so that many weight
// settings can be scored cheaply. log 0 is -inf.
struct LogLikelihoods {
  int rows = 0;
  int cols = 0;
  std::vector<LabelId> labels;  // ascending vocabulary order
  std::vector<cv::Mat> log_global;
  std::vector<cv::Mat> log_transfer;
};

LogLikelihoods log_likelihoods(const LabelMaps& global, const LabelMaps& transfer, const TagSet& candidates);

// Per-pixel argmax of w1 log Sg + w2 log St over the candidate labels; a zero
// weight drops its term entirely. Ties go to the earlier vocabulary label.
// Pixels outside `person_mask` (CV_8UC1, nonzero = person) are null; an empty
// mask counts every pixel as person. Returns CV_32SC1 label ids.
cv::Mat map_labels(const LogLikelihoods& scores, const ParseWeights& weights, const cv::Mat& person_mask);

// S = Sg^w1 * St^w2 with 0^0 = 1.
LabelMaps combined_likelihood(const LabelMaps& global, const LabelMaps& transfer, const ParseWeights& weights);

struct ParseResult {
  cv::Mat labels;                     // CV_32SC1
  std::map<LabelId, cv::Mat> items;   // CV_8UC1 mask per clothing label present
  TagSet tags;                        // predicted tags the parse was restricted to
};

ParseResult combine(const LabelMaps& global, const LabelMaps& transfer, const ParseWeights& weights,
                    const TagSet& predicted, const cv::Mat& person_mask);

// Clothing items of a label map (skin, hair and null excluded).
std::map<LabelId, cv::Mat> item_masks(const cv::Mat& labels);

}  // namespace reid
