#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "reid/skeleton/skeleton.hpp"

namespace reid {

// Channel z-scoring followed by a K-component principal subspace. The model
// file also carries the skeleton z-score statistics so that a client needs a
// single bundle to build identity descriptors.
struct PcaModel {
  static constexpr std::uint16_t kVersion = 1;

  std::uint32_t input_dim = 0;
  std::uint32_t output_dim = 0;
  std::vector<double> zscore_mean;    // D
  std::vector<double> zscore_stddev;  // D, zero deviations stored as 1
  std::vector<double> mean;           // D, mean of the z-scored training data
  std::vector<double> components;     // K x D row-major, orthonormal rows
  std::vector<double> explained_variance;  // K, nonincreasing
  SkeletonStats skeleton_stats = SkeletonStats::identity();

  std::span<const double> component(std::size_t k) const {
    return {components.data() + k * input_dim, input_dim};
  }

  // Expected squared norm of a compressed training vector.
  double retained_variance() const;

  // 64-bit FNV-1a of the serialized model.
  std::uint64_t id() const;

  std::vector<std::uint8_t> serialize() const;
  static PcaModel deserialize(std::span<const std::uint8_t> bytes);
  void save(const std::string& path) const;
  static PcaModel load(const std::string& path);
};

struct ClothingDescriptor {
  std::vector<double> values;
  std::uint64_t pca_model_id = 0;
};

// Requires at least two samples of equal dimension and 1 <= K <= min(D, N-1).
// `channel_of` assigns every dimension to a channel whose values share one
// z-score; when empty each dimension is its own channel. Each principal axis is
// signed so that its largest-magnitude entry is positive.
PcaModel train_pca(std::span<const std::vector<double>> samples, int k,
                   std::span<const std::uint32_t> channel_of = {});

// z-score, center, project. Throws InvalidArgument on dimension mismatch.
ClothingDescriptor compress(const PcaModel& model, std::span<const double> full);

// Maps K coefficients back to the input space.
std::vector<double> reconstruct(const PcaModel& model, std::span<const double> coefficients);

}  // namespace reid
