#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "reid/error.hpp"
#include "reid/features/color_space.hpp"
#include "reid/features/distance_maps.hpp"
#include "reid/features/hog.hpp"
#include "reid/features/lbp_hf.hpp"
#include "reid/features/logistic.hpp"
#include "reid/features/pixel_features.hpp"
#include "reid/features/skin_hair.hpp"
#include "test_util.hpp"

namespace reid {
namespace {

// ---- Lab -------------------------------------------------------------------

struct LabCase {
  std::array<int, 3> rgb;
  std::array<double, 3> lab;
};

// Reference values from scikit-image rgb2lab (D65, 2 degree observer).
const LabCase kLabCases[] = {
    {{255, 255, 255}, {100.0000, -0.0025, 0.0047}}, {{0, 0, 0}, {0.0000, 0.0000, 0.0000}},
    {{255, 0, 0}, {53.2406, 80.0923, 67.2028}},     {{0, 255, 0}, {87.7351, -86.1830, 83.1797}},
    {{0, 0, 255}, {32.2957, 79.1856, -107.8573}},   {{128, 128, 128}, {53.5850, -0.0015, 0.0028}},
    {{12, 200, 77}, {70.8157, -66.5435, 48.8732}},  {{250, 128, 114}, {67.2640, 45.2255, 29.0965}},
    {{165, 42, 42}, {37.5264, 49.6900, 30.5441}},   {{160, 32, 240}, {45.3557, 78.7333, -77.3899}},
    {{1, 2, 3}, {0.5098, -0.1225, -0.4705}},        {{90, 10, 230}, {34.1948, 73.9429, -90.4201}},
};

TEST(Lab, MatchesReferenceConverter) {
  for (const auto& c : kLabCases) {
    const auto lab = rgb_to_lab(static_cast<std::uint8_t>(c.rgb[0]), static_cast<std::uint8_t>(c.rgb[1]),
                                static_cast<std::uint8_t>(c.rgb[2]));
    EXPECT_NEAR(lab.l, c.lab[0], 0.1);
    EXPECT_NEAR(lab.a, c.lab[1], 0.1);
    EXPECT_NEAR(lab.b, c.lab[2], 0.1);
  }
}

TEST(Lab, WhiteAndBlackPoints) {
  const auto w = rgb_to_lab(255, 255, 255);
  EXPECT_NEAR(w.l, 100.0, 0.01);
  EXPECT_NEAR(w.a, 0.0, 0.01);
  EXPECT_NEAR(w.b, 0.0, 0.01);
  const auto k = rgb_to_lab(0, 0, 0);
  EXPECT_EQ(k.l, 0.0);
  EXPECT_EQ(k.a, 0.0);
  EXPECT_EQ(k.b, 0.0);
}

TEST(Lab, ImageConversionMatchesScalar) {
  std::mt19937_64 rng(5);
  const cv::Mat rgb = test::random_rgb(rng, 6, 5);
  const cv::Mat lab = rgb_to_lab(rgb);
  for (int y = 0; y < rgb.rows; ++y) {
    for (int x = 0; x < rgb.cols; ++x) {
      const auto p = rgb.at<cv::Vec3b>(y, x);
      const auto s = rgb_to_lab(p[0], p[1], p[2]);
      const auto v = lab.at<cv::Vec3d>(y, x);
      EXPECT_EQ(v[0], s.l);
      EXPECT_EQ(v[1], s.a);
      EXPECT_EQ(v[2], s.b);
    }
  }
}

// ---- LBP-HF ----------------------------------------------------------------

double bilinear(const cv::Mat& g, double x, double y) {
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const double fx = x - x0;
  const double fy = y - y0;
  const auto at = [&](int yy, int xx) { return fx == 0.0 && xx != x0 ? 0.0 : g.at<double>(yy, xx); };
  const auto at2 = [&](int yy, int xx) { return fy == 0.0 && yy != y0 ? 0.0 : at(yy, xx); };
  return (1 - fy) * ((1 - fx) * at2(y0, x0) + fx * at2(y0, x0 + 1)) +
         fy * ((1 - fx) * at2(y0 + 1, x0) + fx * at2(y0 + 1, x0 + 1));
}

// Brute force: explicit circular sampling, explicit uniform-pattern
// enumeration and an explicit complex DFT per orbit.
LbpHfVector lbp_hf_oracle(const cv::Mat& g) {
  std::array<double, 59> hist{};
  double count = 0;
  for (int y = 1; y + 1 < g.rows; ++y) {
    for (int x = 1; x + 1 < g.cols; ++x) {
      const double c = g.at<double>(y, x);
      std::array<int, 8> bits{};
      for (int p = 0; p < 8; ++p) {
        const double angle = 2.0 * std::numbers::pi * p / 8.0;
        double dx = std::cos(angle);
        double dy = -std::sin(angle);
        if (std::abs(dx) < 1e-12) dx = 0.0;
        if (std::abs(dy) < 1e-12) dy = 0.0;
        if (std::abs(std::abs(dx) - 1.0) < 1e-12) dx = std::round(dx);
        if (std::abs(std::abs(dy) - 1.0) < 1e-12) dy = std::round(dy);
        bits[static_cast<std::size_t>(p)] = bilinear(g, x + dx, y + dy) >= c ? 1 : 0;
      }
      const int ones = std::accumulate(bits.begin(), bits.end(), 0);
      int transitions = 0;
      for (int p = 0; p < 8; ++p) transitions += bits[static_cast<std::size_t>(p)] != bits[static_cast<std::size_t>((p + 1) % 8)];
      int bin = 58;
      if (ones == 0) {
        bin = 56;
      } else if (ones == 8) {
        bin = 57;
      } else if (transitions == 2) {
        for (int r = 0; r < 8; ++r) {
          bool run = true;
          for (int k = 0; k < 8; ++k) {
            const int expect = k < ones ? 1 : 0;
            if (bits[static_cast<std::size_t>((r + k) % 8)] != expect) run = false;
          }
          if (run) bin = (ones - 1) * 8 + r;
        }
      }
      hist[static_cast<std::size_t>(bin)] += 1;
      count += 1;
    }
  }
  for (auto& h : hist) h /= count;
  LbpHfVector out{};
  std::size_t k = 0;
  for (int n = 1; n <= 7; ++n) {
    for (int u = 0; u <= 4; ++u) {
      std::complex<double> sum = 0;
      for (int r = 0; r < 8; ++r) {
        sum += hist[static_cast<std::size_t>((n - 1) * 8 + r)] * std::polar(1.0, -2.0 * std::numbers::pi * u * r / 8.0);
      }
      out[k++] = std::abs(sum);
    }
  }
  out[k++] = hist[56];
  out[k++] = hist[57];
  out[k++] = hist[58];
  return out;
}

cv::Mat rot90(const cv::Mat& m) {
  cv::Mat out;
  cv::rotate(m, out, cv::ROTATE_90_COUNTERCLOCKWISE);
  return out;
}

TEST(LbpHf, MatchesBruteForceOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const cv::Mat g = test::random_gray(rng, 16, 16);
    const auto got = lbp_hf(g, cv::Rect(0, 0, 16, 16));
    const auto want = lbp_hf_oracle(g);
    for (int k = 0; k < kLbpHfDim; ++k) EXPECT_NEAR(got[static_cast<std::size_t>(k)], want[static_cast<std::size_t>(k)], 1e-12);
  }
}

TEST(LbpHf, ConstantWindowIsAllOnesOrbit) {
  const cv::Mat g(9, 9, CV_64FC1, cv::Scalar(42.0));
  const auto v = lbp_hf(g, cv::Rect(0, 0, 9, 9));
  for (int k = 0; k < 35; ++k) EXPECT_EQ(v[static_cast<std::size_t>(k)], 0.0);
  EXPECT_EQ(v[35], 0.0);
  EXPECT_NEAR(v[36], 1.0, 1e-12);
  EXPECT_EQ(v[37], 0.0);
}

TEST(LbpHf, InvariantUnderQuarterTurns) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    cv::Mat g = test::random_gray(rng, 16, 16);
    const auto base = lbp_hf(g, cv::Rect(0, 0, 16, 16));
    const double scale = 1.0 + *std::max_element(base.begin(), base.end());
    for (int turn = 0; turn < 3; ++turn) {
      g = rot90(g);
      const auto v = lbp_hf(g, cv::Rect(0, 0, 16, 16));
      for (int k = 0; k < kLbpHfDim; ++k) EXPECT_LE(std::abs(v[static_cast<std::size_t>(k)] - base[static_cast<std::size_t>(k)]), 1e-6 * scale);
    }
  }
}

TEST(LbpHf, NonNegativeAndWindowChecked) {
  std::mt19937_64 rng(13);
  const cv::Mat g = test::random_gray(rng, 10, 10);
  for (double v : lbp_hf(g, cv::Rect(2, 2, 6, 6))) EXPECT_GE(v, 0.0);
  EXPECT_THROW(lbp_hf(g, cv::Rect(0, 0, 2, 5)), InvalidArgument);
  EXPECT_THROW(lbp_hf(g, cv::Rect(5, 5, 6, 6)), InvalidArgument);
}

TEST(LbpHf, MapMatchesWindowDescriptor) {
  std::mt19937_64 rng(14);
  const cv::Mat g = test::random_gray(rng, 20, 24);
  const int window = 7;
  const FeatureMap map = lbp_hf_map(g, window);
  // Interior pixel: the map histogram counts codes of pixels in the window,
  // which equals lbp_hf over the window grown by one pixel on each side.
  const int x = 10;
  const int y = 9;
  const auto v = lbp_hf(g, cv::Rect(x - window / 2 - 1, y - window / 2 - 1, window + 2, window + 2));
  for (int k = 0; k < kLbpHfDim; ++k) EXPECT_NEAR(map.at(y, x, k), v[static_cast<std::size_t>(k)], 1e-12);
}

TEST(LbpHf, UniformBinsCoverFiftyEightPatterns) {
  std::array<int, 59> used{};
  for (int p = 0; p < 256; ++p) ++used[static_cast<std::size_t>(uniform_bin(static_cast<std::uint8_t>(p)))];
  for (int b = 0; b < 58; ++b) EXPECT_EQ(used[static_cast<std::size_t>(b)], 1) << b;
  EXPECT_EQ(used[58], 256 - 58);
}

// ---- HOG -------------------------------------------------------------------

// Naive HOG following the documented contract, written per pixel with no
// shared helpers.
std::vector<double> hog_oracle(const cv::Mat& g, int cell, int bins, double clip) {
  const int w = g.cols;
  const int h = g.rows;
  const int ncx = w / cell;
  const int ncy = h / cell;
  std::vector<double> raw(static_cast<std::size_t>(ncx * ncy * bins), 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double gx = 0.5 * (g.at<double>(y, std::min(x + 1, w - 1)) - g.at<double>(y, std::max(x - 1, 0)));
      const double gy = 0.5 * (g.at<double>(std::min(y + 1, h - 1), x) - g.at<double>(std::max(y - 1, 0), x));
      const double mag = std::sqrt(gx * gx + gy * gy);
      if (mag == 0) continue;
      double deg = std::atan2(gy, gx) * 180.0 / std::numbers::pi;
      while (deg < 0) deg += 180.0;
      while (deg >= 180.0) deg -= 180.0;
      const double pos = deg / (180.0 / bins);
      const int lo = static_cast<int>(pos) % bins;
      const int hi = (lo + 1) % bins;
      const double frac = pos - std::floor(pos);
      const int cx = std::min(x / cell, ncx - 1);
      const int cy = std::min(y / cell, ncy - 1);
      raw[static_cast<std::size_t>((cy * ncx + cx) * bins + lo)] += (1 - frac) * mag;
      raw[static_cast<std::size_t>((cy * ncx + cx) * bins + hi)] += frac * mag;
    }
  }
  std::vector<double> sum(raw.size(), 0.0);
  std::vector<int> n(static_cast<std::size_t>(ncx * ncy), 0);
  const int bw = std::min(2, ncx);
  const int bh = std::min(2, ncy);
  for (int by = 0; by + bh <= ncy; ++by) {
    for (int bx = 0; bx + bw <= ncx; ++bx) {
      std::vector<double> v;
      for (int cy = by; cy < by + bh; ++cy)
        for (int cx = bx; cx < bx + bw; ++cx)
          for (int b = 0; b < bins; ++b) v.push_back(raw[static_cast<std::size_t>((cy * ncx + cx) * bins + b)]);
      double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0) + 1e-6);
      for (auto& e : v) e = std::min(e / norm, clip);
      norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0) + 1e-6);
      std::size_t k = 0;
      for (int cy = by; cy < by + bh; ++cy) {
        for (int cx = bx; cx < bx + bw; ++cx) {
          for (int b = 0; b < bins; ++b) sum[static_cast<std::size_t>((cy * ncx + cx) * bins + b)] += v[k++] / norm;
          ++n[static_cast<std::size_t>(cy * ncx + cx)];
        }
      }
    }
  }
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] /= n[i / static_cast<std::size_t>(bins)];
  return sum;
}

TEST(Hog, MatchesNaiveOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const cv::Mat g = test::random_gray(rng, 32, 32);
    const HogCells got = hog(g);
    const auto want = hog_oracle(g, 8, 9, 0.2);
    ASSERT_EQ(got.values.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got.values[i], want[i], 1e-5);
  }
}

TEST(Hog, ConstantImageIsZero) {
  const cv::Mat g(24, 24, CV_64FC1, cv::Scalar(7.0));
  for (double v : hog(g).values) EXPECT_EQ(v, 0.0);
}

TEST(Hog, VerticalStepEdgeVotesHorizontalGradientBin) {
  cv::Mat g(16, 16, CV_64FC1, cv::Scalar(0.0));
  g.colRange(8, 16).setTo(100.0);
  const HogCells cells = hog_cell_histograms(g);
  double bin0 = 0.0, rest = 0.0;
  for (int cy = 0; cy < cells.cells_y; ++cy) {
    for (int cx = 0; cx < cells.cells_x; ++cx) {
      bin0 += cells.at(cy, cx, 0);
      for (int b = 1; b < cells.bins; ++b) rest += cells.at(cy, cx, b);
    }
  }
  EXPECT_GT(bin0, 0.0);
  EXPECT_EQ(rest, 0.0);
}

TEST(Hog, GradientsMatchAnalyticDerivativesOnSmoothRamp) {
  cv::Mat g(40, 40, CV_64FC1);
  const auto f = [](double x, double y) { return 20.0 * std::sin(0.03 * x) + 15.0 * std::cos(0.04 * y) + 0.5 * x; };
  for (int y = 0; y < g.rows; ++y)
    for (int x = 0; x < g.cols; ++x) g.at<double>(y, x) = f(x, y);
  cv::Mat gx, gy;
  image_gradients(g, gx, gy);
  for (int y = 1; y + 1 < g.rows; ++y) {
    for (int x = 1; x + 1 < g.cols; ++x) {
      const double dx = 20.0 * 0.03 * std::cos(0.03 * x) + 0.5;
      const double dy = -15.0 * 0.04 * std::sin(0.04 * y);
      EXPECT_NEAR(std::hypot(gx.at<double>(y, x), gy.at<double>(y, x)), std::hypot(dx, dy), 1e-3);
    }
  }
}

TEST(Hog, RejectsImageSmallerThanOneCell) {
  const cv::Mat g(4, 4, CV_64FC1, cv::Scalar(0.0));
  EXPECT_THROW(hog(g), InvalidArgument);
}

// ---- Distance maps ---------------------------------------------------------

TEST(BoundaryDistance, CornerCenterAndSymmetry) {
  const cv::Mat m = boundary_distance_map(11, 11);
  EXPECT_EQ(m.at<double>(0, 0), 0.0);
  EXPECT_NEAR(m.at<double>(5, 5), -std::log(6.0), 1e-12);
  EXPECT_NEAR(m.at<double>(5, 5), -1.7918, 1e-4);
  const cv::Mat r = boundary_distance_map(13, 8);
  cv::Mat flipped;
  cv::flip(r, flipped, 1);
  EXPECT_EQ(cv::norm(r, flipped, cv::NORM_INF), 0.0);
  cv::flip(r, flipped, 0);
  EXPECT_EQ(cv::norm(r, flipped, cv::NORM_INF), 0.0);
}

TEST(PoseDistance, ZeroAtJointAndLogFourAtThreePixels) {
  Skeleton2D pose;
  pose[JointId::kHead] = {{10.0, 12.0}, TrackingState::kTracked};
  const FeatureMap m = pose_distance_map(pose, 30, 30);
  const int head = static_cast<int>(JointId::kHead);
  EXPECT_EQ(m.at(12, 10, head), 0.0);
  EXPECT_NEAR(m.at(12, 13, head), -std::log(4.0), 1e-12);
  EXPECT_NEAR(m.at(12, 13, head), -1.3863, 1e-4);
  // Untracked joints carry the image-diagonal sentinel everywhere.
  const double sentinel = -std::log(1.0 + std::hypot(30.0, 30.0));
  const int foot = static_cast<int>(JointId::kFootL);
  EXPECT_NEAR(m.at(0, 0, foot), sentinel, 1e-12);
  EXPECT_NEAR(m.at(29, 17, foot), sentinel, 1e-12);
}

TEST(PoseDistance, MonotoneInDistance) {
  Skeleton2D pose;
  pose[JointId::kSpine] = {{15.5, 14.0}, TrackingState::kTracked};
  const FeatureMap m = pose_distance_map(pose, 32, 28);
  const int c = static_cast<int>(JointId::kSpine);
  for (int y = 0; y < 28; ++y) {
    for (int x = 0; x < 32; ++x) {
      for (int y2 = 0; y2 < 28; y2 += 3) {
        for (int x2 = 0; x2 < 32; x2 += 3) {
          const double d1 = std::hypot(x - 15.5, y - 14.0);
          const double d2 = std::hypot(x2 - 15.5, y2 - 14.0);
          if (d1 < d2) { EXPECT_GE(m.at(y, x, c), m.at(y2, x2, c)); }
        }
      }
    }
  }
}

TEST(PixelFeatures, AllFiniteWithSeventyThreeChannels) {
  std::mt19937_64 rng(31);
  const cv::Mat rgb = test::random_rgb(rng, 20, 16);
  Skeleton2D pose;
  pose[JointId::kHead] = {{8, 3}, TrackingState::kTracked};
  SkinHairModel sh;
  sh.feature_dim = channel::kBaseCount;
  sh.skin.weights.assign(channel::kBaseCount, 0.01);
  sh.hair.weights.assign(channel::kBaseCount, -0.01);
  const FeatureMap f = compute_pixel_features(rgb, pose, sh, FeatureConfig{});
  EXPECT_EQ(f.channels(), channel::kCount);
  for (double v : f.data()) EXPECT_TRUE(std::isfinite(v));
  for (int y = 0; y < f.rows(); ++y) {
    for (int x = 0; x < f.cols(); ++x) {
      EXPECT_GE(f.at(y, x, channel::kSkinHair), 0.0);
      EXPECT_LE(f.at(y, x, channel::kSkinHair + 1), 1.0);
    }
  }
}

TEST(PixelFeatures, ChannelGroupsFollowLayout) {
  EXPECT_EQ(global_parse_channels().size(), 70u);
  EXPECT_EQ(clothing_channels(false).size(), 53u);
  EXPECT_EQ(clothing_channels(true).size(), 73u);
}

// ---- Logistic regression and skin/hair ------------------------------------

TEST(Logistic, SigmoidMatchesScalarOracle) {
  std::mt19937_64 rng(41);
  BinaryLogistic m;
  m.weights = test::random_vector(rng, 7);
  m.bias = 0.3;
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = test::random_vector(rng, 7, -5, 5);
    double z = m.bias;
    for (int j = 0; j < 7; ++j) z += m.weights[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
    EXPECT_NEAR(m.predict(x), 1.0 / (1.0 + std::exp(-z)), 1e-9);
  }
  EXPECT_NEAR(sigmoid(60.0), 1.0, 1e-12);
  EXPECT_NEAR(sigmoid(-60.0), 0.0, 1e-12);
  EXPECT_EQ(sigmoid(0.0), 0.5);
}

TEST(Logistic, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int instance = 0; instance < 20; ++instance) {
    const int n = 30, d = 5;
    Eigen::MatrixXd x(n, d);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j) x(i, j) = test::random_vector(rng, 1, -2, 2)[0];
      y(i) = coin(rng);
    }
    const LogisticObjective obj(x, y, 1e-2);
    Eigen::VectorXd p(d + 1);
    for (int j = 0; j <= d; ++j) p(j) = test::random_vector(rng, 1)[0];
    Eigen::VectorXd grad;
    obj.value_and_gradient(p, grad);
    for (int j = 0; j <= d; ++j) {
      const double h = 1e-6;
      Eigen::VectorXd a = p, b = p;
      a(j) += h;
      b(j) -= h;
      const double fd = (obj.value(a) - obj.value(b)) / (2 * h);
      EXPECT_LE(std::abs(fd - grad(j)), 1e-4 * std::max(1e-3, std::abs(fd))) << "instance " << instance;
    }
  }
}

TEST(Logistic, LossNonIncreasingAndOrderIndependent) {
  std::mt19937_64 rng(43);
  const int n = 60, d = 4;
  Eigen::MatrixXd x(n, d);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) x(i, j) = test::random_vector(rng, 1, -2, 2)[0];
    y(i) = x(i, 0) + 0.5 * x(i, 1) + 0.3 * test::random_vector(rng, 1)[0] > 0 ? 1 : 0;
  }
  const auto fit = train_logistic(x, y);
  for (std::size_t k = 1; k < fit.loss_history.size(); ++k) EXPECT_LE(fit.loss_history[k], fit.loss_history[k - 1]);

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Eigen::MatrixXd xs(n, d);
  Eigen::VectorXd ys(n);
  for (int i = 0; i < n; ++i) {
    xs.row(i) = x.row(perm[static_cast<std::size_t>(i)]);
    ys(i) = y(perm[static_cast<std::size_t>(i)]);
  }
  const auto shuffled = train_logistic(xs, ys);
  EXPECT_NEAR(fit.loss_history.back(), shuffled.loss_history.back(), 1e-6);
}

TEST(Logistic, ZeroEpochsGiveHalfEverywhere) {
  Eigen::MatrixXd x(2, 3);
  x << 1, 2, 3, -4, 5, 6;
  Eigen::VectorXd y(2);
  y << 1, 0;
  LogisticTrainOptions o;
  o.max_epochs = 0;
  const auto fit = train_logistic(x, y, o);
  std::vector<double> row = {1, 2, 3};
  EXPECT_EQ(fit.model.predict(row), 0.5);
}

TEST(SkinHair, ZeroWeightsGiveHalf) {
  SkinHairModel m;
  m.feature_dim = 4;
  m.skin.weights.assign(4, 0.0);
  m.hair.weights.assign(4, 0.0);
  const std::vector<double> x = {1, -2, 3, 4};
  const auto p = skin_hair_likelihood(m, x);
  EXPECT_EQ(p[0], 0.5);
  EXPECT_EQ(p[1], 0.5);
  EXPECT_THROW(skin_hair_likelihood(m, std::vector<double>{1, 2}), InvalidArgument);
}

AnnotatedImage stripe_image(bool with_hair) {
  const auto& v = Vocabulary::canonical();
  AnnotatedImage img;
  img.image_id = "stripes";
  img.rgb = cv::Mat(24, 24, CV_8UC3, cv::Scalar(40, 90, 200));
  img.labels = cv::Mat(24, 24, CV_16UC1, cv::Scalar(v.id("shirt")));
  img.rgb.rowRange(0, 8).setTo(cv::Scalar(230, 180, 150));
  img.labels.rowRange(0, 8).setTo(v.skin());
  if (with_hair) {
    img.rgb.rowRange(16, 24).setTo(cv::Scalar(60, 30, 10));
    img.labels.rowRange(16, 24).setTo(v.hair());
  }
  img.tags = {v.id("shirt")};
  return img;
}

TEST(SkinHair, SeparableCorpusIsLearned) {
  const auto& v = Vocabulary::canonical();
  const std::vector<AnnotatedImage> corpus = {stripe_image(true)};
  SkinHairTrainOptions o;
  o.pixel_stride = 1;
  const SkinHairModel m = train_skin_hair(corpus, FeatureConfig{}, o);
  const FeatureMap f = compute_base_features(corpus[0].rgb, corpus[0].pose, FeatureConfig{});
  int correct = 0, total = 0;
  for (int y = 0; y < f.rows(); ++y) {
    for (int x = 0; x < f.cols(); ++x) {
      const auto p = skin_hair_likelihood(m, f.pixel(y, x));
      const LabelId truth = corpus[0].labels.at<std::uint16_t>(y, x);
      correct += (p[0] > 0.5) == (truth == v.skin());
      correct += (p[1] > 0.5) == (truth == v.hair());
      total += 2;
    }
  }
  EXPECT_GE(static_cast<double>(correct) / total, 0.99);
}

TEST(SkinHair, MissingClassIsAnError) {
  const std::vector<AnnotatedImage> corpus = {stripe_image(false)};
  EXPECT_THROW(train_skin_hair(corpus, FeatureConfig{}), DataError);
}

TEST(SkinHair, ModelFileRoundTrips) {
  std::mt19937_64 rng(44);
  SkinHairModel m;
  m.feature_dim = 71;
  m.skin.weights = test::random_vector(rng, 71);
  m.hair.weights = test::random_vector(rng, 71);
  m.skin.bias = 0.25;
  m.hair.bias = -1.5;
  const auto bytes = m.serialize();
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "RIDM");
  const auto back = SkinHairModel::deserialize(bytes);
  EXPECT_EQ(back.serialize(), bytes);
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(SkinHairModel::deserialize(bad), DataError);
  bad = bytes;
  bad.pop_back();
  EXPECT_THROW(SkinHairModel::deserialize(bad), DataError);
}

}  // namespace
}  // namespace reid
