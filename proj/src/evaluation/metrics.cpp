#include "reid/evaluation/metrics.hpp"

#include "reid/data/vocabulary.hpp"
#include "reid/error.hpp"

namespace reid {

namespace {

TagSet clothing_only(const TagSet& tags) {
  const auto& vocab = Vocabulary::canonical();
  TagSet out;
  for (LabelId l : tags) {
    if (!vocab.is_non_clothing(l)) out.insert(l);
  }
  return out;
}

}  // namespace

TagScores evaluate_tags(const TagSet& predicted, const TagSet& truth) {
  const TagSet p = clothing_only(predicted);
  const TagSet t = clothing_only(truth);
  std::size_t hits = 0;
  for (LabelId l : p) hits += t.count(l);
  TagScores s;
  s.precision = p.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(p.size());
  s.recall = t.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(t.size());
  s.f1 = s.precision + s.recall > 0.0 ? 2.0 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
  return s;
}

TagScores mean_scores(std::span<const TagScores> scores) {
  TagScores m;
  if (scores.empty()) return m;
  for (const auto& s : scores) {
    m.precision += s.precision;
    m.recall += s.recall;
    m.f1 += s.f1;
  }
  const double n = static_cast<double>(scores.size());
  m.precision /= n;
  m.recall /= n;
  m.f1 /= n;
  return m;
}

std::vector<double> cmc_curve(std::span<const std::vector<RankedSubject>> rankings,
                              std::span<const std::uint32_t> truth, std::size_t max_rank) {
  if (rankings.size() != truth.size()) throw InvalidArgument("one true subject per ranking is required");
  std::vector<double> cmc(max_rank, 0.0);
  if (rankings.empty()) return cmc;
  for (std::size_t i = 0; i < rankings.size(); ++i) {
    const auto& r = rankings[i];
    for (std::size_t k = 0; k < r.size() && k < max_rank; ++k) {
      if (r[k].subject_id != truth[i]) continue;
      for (std::size_t j = k; j < max_rank; ++j) cmc[j] += 1.0;
      break;
    }
  }
  for (auto& v : cmc) v /= static_cast<double>(rankings.size());
  return cmc;
}

}  // namespace reid
