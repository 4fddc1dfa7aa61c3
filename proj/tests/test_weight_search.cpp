#include <gtest/gtest.h>

#include <cmath>

#include "reid/error.hpp"
#include "reid/parsing/weight_search.hpp"
#include "test_util.hpp"

namespace reid {
namespace {

// ---- Simplex search --------------------------------------------------------

TEST(NelderMead, FindsQuadraticMinimum) {
  int calls = 0;
  const Objective f = [&](const std::vector<double>& p) {
    ++calls;
    return (p[0] - 3) * (p[0] - 3) + 2 * (p[1] + 1) * (p[1] + 1);
  };
  NelderMeadOptions o;
  o.max_iterations = 500;
  o.min_diameter = 1e-8;
  const auto r = nelder_mead(f, {{0, 0}, {1, 0}, {0, 1}}, o);
  EXPECT_NEAR(r.best[0], 3.0, 1e-4);
  EXPECT_NEAR(r.best[1], -1.0, 1e-4);
  EXPECT_NEAR(r.value, 0.0, 1e-8);
  EXPECT_EQ(r.evaluations, calls);
}

TEST(NelderMead, ApproachesRosenbrockMinimum) {
  const Objective f = [](const std::vector<double>& p) {
    return 100 * std::pow(p[1] - p[0] * p[0], 2) + std::pow(1 - p[0], 2);
  };
  NelderMeadOptions o;
  o.max_iterations = 2000;
  o.min_diameter = 1e-10;
  const auto r = nelder_mead(f, {{-1.2, 1}, {-1, 1}, {-1.2, 1.2}}, o);
  EXPECT_NEAR(r.best[0], 1.0, 1e-3);
  EXPECT_NEAR(r.best[1], 1.0, 2e-3);
}

TEST(NelderMead, BestNeverWorseThanStartAndHistoryMonotone) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    // A bumpy piecewise-constant function, like an accuracy surface.
    const auto c = test::random_vector(rng, 4, -3, 3);
    const Objective f = [&](const std::vector<double>& p) {
      return std::floor(4 * std::sin(c[0] * p[0]) + 4 * std::cos(c[1] * p[1])) + 0.01 * (p[0] - c[2]) * (p[0] - c[2]);
    };
    std::vector<std::vector<double>> simplex = {test::random_vector(rng, 2, -2, 2), test::random_vector(rng, 2, -2, 2),
                                                test::random_vector(rng, 2, -2, 2)};
    double start = INFINITY;
    for (const auto& v : simplex) start = std::min(start, f(v));
    NelderMeadOptions o;
    o.max_iterations = 50;
    const auto r = nelder_mead(f, simplex, o);
    EXPECT_LE(r.value, start);
    EXPECT_EQ(r.value, f(r.best));
    EXPECT_LE(r.iterations, 50);
    ASSERT_EQ(r.best_history.size(), static_cast<std::size_t>(r.iterations));
    for (std::size_t i = 1; i < r.best_history.size(); ++i) EXPECT_LE(r.best_history[i], r.best_history[i - 1]);
  }
}

TEST(NelderMead, StopsOnSmallSimplexAndRespectsLowerBound) {
  const Objective f = [](const std::vector<double>& p) { return (p[0] + 5) * (p[0] + 5) + p[1] * p[1]; };
  NelderMeadOptions o;
  o.lower_bound = 0.0;
  const auto r = nelder_mead(f, {{1, 1}, {1.5, 1}, {1, 1.5}}, o);
  EXPECT_GE(r.best[0], 0.0);
  EXPECT_GE(r.best[1], 0.0);
  EXPECT_NEAR(r.best[0], 0.0, 1e-2);
  EXPECT_LT(r.iterations, 100);

  NelderMeadOptions tiny;
  tiny.min_diameter = 10.0;
  EXPECT_EQ(nelder_mead(f, {{1, 1}, {1.5, 1}, {1, 1.5}}, tiny).iterations, 0);
}

// ---- Weight search ---------------------------------------------------------

constexpr LabelId kA = 4;
constexpr LabelId kB = 9;

// Two labels whose log-likelihood differences are g (global) and t (transfer);
// the truth is A where g + ratio * t > 0.
WeightSearchImage two_label_image(std::mt19937_64& rng, int rows, int cols, double ratio) {
  WeightSearchImage img;
  img.scores.rows = rows;
  img.scores.cols = cols;
  img.scores.labels = {kA, kB};
  for (int i = 0; i < 2; ++i) {
    img.scores.log_global.emplace_back(rows, cols, CV_64FC1, cv::Scalar(0));
    img.scores.log_transfer.emplace_back(rows, cols, CV_64FC1, cv::Scalar(0));
  }
  img.truth = cv::Mat(rows, cols, CV_32SC1);
  for (int y = 0; y < rows; ++y) {
    for (int x = 0; x < cols; ++x) {
      const double g = test::random_vector(rng, 1, -1, 1)[0];
      const double t = test::random_vector(rng, 1, -1, 1)[0];
      img.scores.log_global[0].at<double>(y, x) = g;
      img.scores.log_transfer[0].at<double>(y, x) = t;
      img.truth.at<int>(y, x) = g + ratio * t > 0 ? kA : kB;
    }
  }
  return img;
}

TEST(WeightSearch, AccuracyCountsForegroundOnly) {
  WeightSearchImage img;
  img.scores.rows = 1;
  img.scores.cols = 3;
  img.scores.labels = {kA, kB};
  img.scores.log_global = {cv::Mat(1, 3, CV_64FC1, cv::Scalar(0)), cv::Mat(1, 3, CV_64FC1, cv::Scalar(-1))};
  img.scores.log_transfer = {cv::Mat(1, 3, CV_64FC1, cv::Scalar(0)), cv::Mat(1, 3, CV_64FC1, cv::Scalar(-1))};
  img.truth = (cv::Mat_<int>(1, 3) << kA, kB, Vocabulary::canonical().null());
  const std::vector<WeightSearchImage> corpus = {img};
  const auto c = foreground_accuracy(corpus, {1, 1});
  EXPECT_EQ(c.foreground, 2);
  EXPECT_EQ(c.correct, 1);
  EXPECT_EQ(c.accuracy(), 0.5);
}

TEST(WeightSearch, AtLeastAsGoodAsLogGridOracle) {
  for (double ratio : {0.25, 2.0, 6.0}) {
    std::mt19937_64 rng(2);
    const std::vector<WeightSearchImage> corpus = {two_label_image(rng, 30, 30, ratio),
                                                   two_label_image(rng, 30, 30, ratio)};
    double grid_best = -1;
    double grid_ratio = 0;
    for (int e = -4; e <= 4; ++e) {
      const double acc = foreground_accuracy(corpus, {1.0, std::pow(2.0, e)}).accuracy();
      if (acc > grid_best) {
        grid_best = acc;
        grid_ratio = std::pow(2.0, e);
      }
    }
    const auto r = optimize_weights(corpus);
    EXPECT_EQ(r.accuracy, foreground_accuracy(corpus, r.weights).accuracy());
    const double found = r.weights.transfer / r.weights.global;
    const bool near_grid = found >= grid_ratio / 2 && found <= grid_ratio * 2;
    EXPECT_TRUE(r.accuracy >= grid_best || near_grid)
        << "ratio " << ratio << " found " << found << " acc " << r.accuracy << " grid " << grid_ratio << " acc "
        << grid_best;
    EXPECT_GE(r.accuracy, foreground_accuracy(corpus, {1, 1}).accuracy());
  }
}

TEST(WeightSearch, AdversarialTransferIsDownweighted) {
  // The global map is perfect and the transfer map points the wrong way.
  std::mt19937_64 rng(3);
  std::vector<WeightSearchImage> corpus = {two_label_image(rng, 25, 25, 0.0)};
  auto& s = corpus[0].scores;
  s.log_transfer[0] = -0.8 * s.log_global[0];
  const double at_unit = foreground_accuracy(corpus, {1, 1}).accuracy();
  const auto r = optimize_weights(corpus);
  EXPECT_GE(r.accuracy, at_unit);
  EXPECT_EQ(r.accuracy, 1.0);
  EXPECT_GE(r.weights.global, 0.0);
  EXPECT_GE(r.weights.transfer, 0.0);
}

TEST(WeightSearch, EmptyCorpusIsAnError) {
  EXPECT_THROW(optimize_weights(std::vector<WeightSearchImage>{}), InvalidArgument);
}

}  // namespace
}  // namespace reid
