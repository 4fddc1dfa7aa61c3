#include "reid/parsing/weight_search.hpp"

#include <limits>

#include "reid/error.hpp"

namespace reid {

AccuracyCounts foreground_accuracy(std::span<const WeightSearchImage> corpus, const ParseWeights& weights) {
  const LabelId null = Vocabulary::canonical().null();
  AccuracyCounts counts;
  for (const auto& img : corpus) {
    const cv::Mat predicted = map_labels(img.scores, weights, cv::Mat());
    for (int y = 0; y < img.truth.rows; ++y) {
      for (int x = 0; x < img.truth.cols; ++x) {
        const int t = img.truth.at<int>(y, x);
        if (t == null) continue;
        ++counts.foreground;
        if (predicted.at<int>(y, x) == t) ++counts.correct;
      }
    }
  }
  return counts;
}

WeightSearchResult optimize_weights(std::span<const WeightSearchImage> corpus, NelderMeadOptions options) {
  if (corpus.empty()) throw InvalidArgument("weight search needs a nonempty corpus");
  options.lower_bound = 0.0;
  auto objective = [&](const std::vector<double>& p) {
    const ParseWeights w{p[0], p[1]};
    if (!w.valid()) return std::numeric_limits<double>::infinity();
    return -foreground_accuracy(corpus, w).accuracy();
  };
  WeightSearchResult out;
  out.search = nelder_mead(objective, {{1.0, 1.0}, {1.5, 1.0}, {1.0, 1.5}}, options);
  out.weights = {out.search.best[0], out.search.best[1]};
  out.accuracy = -out.search.value;
  return out;
}

}  // namespace reid
