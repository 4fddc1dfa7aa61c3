#pragma once

#include <array>

#include <opencv2/core.hpp>

#include "reid/features/feature_map.hpp"

namespace reid {

// Rotation-invariant LBP histogram-Fourier texture descriptor with 8 samples
// on a unit circle. Uniform patterns are binned by (number of ones, rotation);
// DFT magnitudes along each rotation orbit cancel in-plane rotation.
inline constexpr int kLbpSamples = 8;
inline constexpr int kLbpUniformBins = 59;
inline constexpr int kLbpHfDim = 38;
inline constexpr std::uint8_t kLbpInvalidCode = 255;

using LbpHistogram = std::array<double, kLbpUniformBins>;
using LbpHfVector = std::array<double, kLbpHfDim>;

// Maps an 8-bit pattern to its uniform bin: (ones-1)*8 + rotation for
// patterns with 1..7 ones, 56 for all zeros, 57 for all ones, 58 otherwise.
int uniform_bin(std::uint8_t pattern);

// Uniform bin id per pixel of a CV_64FC1 image. Pixels whose neighborhood
// leaves the image get kLbpInvalidCode.
cv::Mat lbp_codes(const cv::Mat& gray);

// Fourier magnitudes |H(n, u)| for n = 1..7, u = 0..4, followed by the
// all-zeros, all-ones and non-uniform bins.
LbpHfVector lbp_hf_from_histogram(const LbpHistogram& hist);

// Descriptor of one window. Only pixels whose full neighborhood lies inside
// the window contribute; the histogram is normalized to unit mass. Throws
// InvalidArgument for windows smaller than 3x3 or not inside the image.
LbpHfVector lbp_hf(const cv::Mat& gray, const cv::Rect& window);

// Per-pixel descriptor over a `window` x `window` neighborhood clipped to the
// image, computed with integral histograms.
FeatureMap lbp_hf_map(const cv::Mat& gray, int window);

}  // namespace reid
