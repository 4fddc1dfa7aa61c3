#include "reid/parsing/combine.hpp"

#include <cmath>
#include <limits>

#include "reid/error.hpp"

namespace reid {

namespace {

cv::Mat log_map(const cv::Mat& m) {
  cv::Mat out(m.size(), CV_64FC1);
  for (int y = 0; y < m.rows; ++y) {
    for (int x = 0; x < m.cols; ++x) {
      const double v = m.at<double>(y, x);
      out.at<double>(y, x) = v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
    }
  }
  return out;
}

}  // namespace

TagSet parse_label_set(const TagSet& predicted) {
  const auto& vocab = Vocabulary::canonical();
  TagSet out = predicted;
  out.insert(vocab.skin());
  out.insert(vocab.hair());
  out.insert(vocab.null());
  return out;
}

LogLikelihoods log_likelihoods(const LabelMaps& global, const LabelMaps& transfer, const TagSet& candidates) {
  if (global.rows != transfer.rows || global.cols != transfer.cols) throw InvalidArgument("likelihood maps differ in size");
  LogLikelihoods out;
  out.rows = global.rows;
  out.cols = global.cols;
  for (LabelId l : candidates) {
    out.labels.push_back(l);
    out.log_global.push_back(log_map(global[l]));
    out.log_transfer.push_back(log_map(transfer[l]));
  }
  return out;
}

cv::Mat map_labels(const LogLikelihoods& scores, const ParseWeights& weights, const cv::Mat& person_mask) {
  if (!weights.valid()) throw InvalidArgument("parse weights must be nonnegative and not both zero");
  if (scores.labels.empty()) throw InvalidArgument("no candidate labels");
  const bool masked = !person_mask.empty();
  if (masked && (person_mask.rows != scores.rows || person_mask.cols != scores.cols)) {
    throw InvalidArgument("person mask differs in size from the likelihood maps");
  }
  const LabelId null = Vocabulary::canonical().null();
  const double w1 = weights.global;
  const double w2 = weights.transfer;
  cv::Mat out(scores.rows, scores.cols, CV_32SC1);
  for (int y = 0; y < scores.rows; ++y) {
    for (int x = 0; x < scores.cols; ++x) {
      if (masked && person_mask.at<std::uint8_t>(y, x) == 0) {
        out.at<int>(y, x) = null;
        continue;
      }
      LabelId best = scores.labels.front();
      double best_s = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < scores.labels.size(); ++i) {
        double s = 0.0;
        if (w1 > 0.0) s += w1 * scores.log_global[i].at<double>(y, x);
        if (w2 > 0.0) s += w2 * scores.log_transfer[i].at<double>(y, x);
        if (s > best_s) {
          best_s = s;
          best = scores.labels[i];
        }
      }
      out.at<int>(y, x) = best;
    }
  }
  return out;
}

LabelMaps combined_likelihood(const LabelMaps& global, const LabelMaps& transfer, const ParseWeights& weights) {
  if (global.rows != transfer.rows || global.cols != transfer.cols || global.maps.size() != transfer.maps.size()) {
    throw InvalidArgument("likelihood maps differ in shape");
  }
  LabelMaps out = LabelMaps::zeros(global.rows, global.cols, global.maps.size());
  for (std::size_t l = 0; l < global.maps.size(); ++l) {
    for (int y = 0; y < global.rows; ++y) {
      for (int x = 0; x < global.cols; ++x) {
        out.maps[l].at<double>(y, x) = std::pow(global.maps[l].at<double>(y, x), weights.global) *
                                       std::pow(transfer.maps[l].at<double>(y, x), weights.transfer);
      }
    }
  }
  return out;
}

std::map<LabelId, cv::Mat> item_masks(const cv::Mat& labels) {
  const auto& vocab = Vocabulary::canonical();
  std::map<LabelId, cv::Mat> items;
  for (int y = 0; y < labels.rows; ++y) {
    for (int x = 0; x < labels.cols; ++x) {
      const LabelId l = labels.at<int>(y, x);
      if (vocab.is_non_clothing(l)) continue;
      auto [it, inserted] = items.try_emplace(l);
      if (inserted) it->second = cv::Mat::zeros(labels.size(), CV_8UC1);
      it->second.at<std::uint8_t>(y, x) = 255;
    }
  }
  return items;
}

ParseResult combine(const LabelMaps& global, const LabelMaps& transfer, const ParseWeights& weights,
                    const TagSet& predicted, const cv::Mat& person_mask) {
  ParseResult out;
  out.tags = predicted;
  out.labels = map_labels(log_likelihoods(global, transfer, parse_label_set(predicted)), weights, person_mask);
  out.items = item_masks(out.labels);
  return out;
}

}  // namespace reid
