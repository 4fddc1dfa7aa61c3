#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "reid/data/types.hpp"
#include "reid/retrieval/gallery.hpp"

namespace reid {

struct TagScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Set precision/recall over clothing labels only (skin, hair and null are
// dropped from both sides). An empty prediction has precision 0; an empty
// truth has recall 0.
TagScores evaluate_tags(const TagSet& predicted, const TagSet& truth);

// Mean of per-item scores.
TagScores mean_scores(std::span<const TagScores> scores);

// Cumulative match characteristic: cmc[k-1] is the fraction of probes whose
// true subject appears within the first k ranked subjects.
std::vector<double> cmc_curve(std::span<const std::vector<RankedSubject>> rankings,
                              std::span<const std::uint32_t> truth, std::size_t max_rank);

}  // namespace reid
