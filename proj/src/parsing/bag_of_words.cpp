#include "reid/parsing/bag_of_words.hpp"

#include <limits>
#include <random>

#include "reid/data/binary_io.hpp"
#include "reid/data/fixture.hpp"
#include "reid/error.hpp"
#include "reid/features/pixel_features.hpp"

namespace reid {

namespace {

constexpr std::string_view kMagic = "RIDV";

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

WordGroup kmeans(const std::vector<double>& samples, int dims, int k, int max_iterations, std::mt19937_64& rng) {
  const int n = static_cast<int>(samples.size()) / dims;
  auto sample = [&](int i) {
    return std::span<const double>(samples.data() + static_cast<std::size_t>(i) * dims, static_cast<std::size_t>(dims));
  };
  WordGroup group;
  group.dims = dims;
  k = std::min(k, n);

  std::vector<double> nearest(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  int pick = uniform_int(rng, 0, n - 1);
  for (int c = 0; c < k; ++c) {
    const auto s = sample(pick);
    group.words.insert(group.words.end(), s.begin(), s.end());
    int farthest = 0;
    for (int i = 0; i < n; ++i) {
      auto& d = nearest[static_cast<std::size_t>(i)];
      d = std::min(d, squared_distance(sample(i), s));
      if (d > nearest[static_cast<std::size_t>(farthest)]) farthest = i;
    }
    pick = farthest;
  }

  std::vector<int> assignment(static_cast<std::size_t>(n), -1);
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      const int a = group.assign(sample(i));
      changed |= a != assignment[static_cast<std::size_t>(i)];
      assignment[static_cast<std::size_t>(i)] = a;
    }
    if (!changed) break;
    std::vector<double> sums(group.words.size(), 0.0);
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < n; ++i) {
      const int a = assignment[static_cast<std::size_t>(i)];
      ++counts[static_cast<std::size_t>(a)];
      const auto s = sample(i);
      for (int d = 0; d < dims; ++d) sums[static_cast<std::size_t>(a * dims + d)] += s[static_cast<std::size_t>(d)];
    }
    // Empty clusters keep their previous center.
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] == 0) continue;
      for (int d = 0; d < dims; ++d) {
        group.words[static_cast<std::size_t>(c * dims + d)] =
            sums[static_cast<std::size_t>(c * dims + d)] / counts[static_cast<std::size_t>(c)];
      }
    }
  }
  return group;
}

}  // namespace

int WordGroup::assign(std::span<const double> pixel) const {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < count(); ++i) {
    const double d = squared_distance(pixel, word(i));
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

std::size_t BowVocabulary::dimension() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += static_cast<std::size_t>(g.count());
  return n;
}

std::vector<std::uint8_t> BowVocabulary::serialize() const {
  ByteWriter w;
  w.raw(kMagic);
  w.u16(kVersion);
  w.u32(static_cast<std::uint32_t>(groups.size()));
  for (const auto& g : groups) {
    w.u32(static_cast<std::uint32_t>(g.first_channel));
    w.u32(static_cast<std::uint32_t>(g.dims));
    w.u32(static_cast<std::uint32_t>(g.count()));
    w.f64s(g.words);
  }
  return w.take();
}

BowVocabulary BowVocabulary::deserialize(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes, "BoW vocabulary");
  r.expect_magic(kMagic);
  const auto version = r.u16();
  if (version != kVersion) throw DataError("BoW vocabulary: unsupported version " + std::to_string(version));
  BowVocabulary v;
  const auto n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) {
    WordGroup g;
    g.first_channel = static_cast<int>(r.u32());
    g.dims = static_cast<int>(r.u32());
    const auto count = r.u32();
    if (g.dims <= 0 || count == 0) throw DataError("BoW vocabulary: empty word group");
    g.words = r.f64s(static_cast<std::size_t>(count) * static_cast<std::size_t>(g.dims));
    v.groups.push_back(std::move(g));
  }
  if (!r.at_end()) throw DataError("BoW vocabulary: trailing bytes");
  return v;
}

void BowVocabulary::save(const std::string& path) const { write_file_atomic(path, serialize()); }

BowVocabulary BowVocabulary::load(const std::string& path) { return deserialize(read_file_bytes(path)); }

std::vector<ChannelBlock> bow_channel_blocks() {
  return {{channel::kLab, 3}, {channel::kLbpHf, 38}, {channel::kHog, 9}};
}

BowVocabulary train_bow_vocabulary(std::span<const FeatureMap> feature_maps, const BowTrainOptions& options) {
  if (feature_maps.empty()) throw InvalidArgument("BoW training needs at least one feature map");
  if (options.words_per_group < 1) throw InvalidArgument("BoW vocabulary needs at least one word per group");
  const int stride = std::max(1, options.pixel_stride);
  std::mt19937_64 rng(options.seed);
  BowVocabulary vocab;
  for (const auto& block : bow_channel_blocks()) {
    std::vector<double> samples;
    for (const auto& f : feature_maps) {
      if (f.channels() < block.first + block.count) throw InvalidArgument("feature map lacks BoW channels");
      for (int y = 0; y < f.rows(); y += stride) {
        for (int x = 0; x < f.cols(); x += stride) {
          const auto px = f.pixel(y, x).subspan(static_cast<std::size_t>(block.first), static_cast<std::size_t>(block.count));
          samples.insert(samples.end(), px.begin(), px.end());
        }
      }
    }
    WordGroup g = kmeans(samples, block.count, options.words_per_group, options.max_iterations, rng);
    g.first_channel = block.first;
    vocab.groups.push_back(std::move(g));
  }
  return vocab;
}

std::vector<std::vector<double>> bow_features(const FeatureMap& features, const Segmentation& segmentation,
                                              const BowVocabulary& vocabulary) {
  if (features.rows() != segmentation.labels.rows || features.cols() != segmentation.labels.cols) {
    throw InvalidArgument("segmentation and feature map differ in size");
  }
  const std::size_t dim = vocabulary.dimension();
  std::vector<std::vector<double>> hist(static_cast<std::size_t>(segmentation.count), std::vector<double>(dim, 0.0));
  std::vector<int> sizes(static_cast<std::size_t>(segmentation.count), 0);
  for (int y = 0; y < features.rows(); ++y) {
    for (int x = 0; x < features.cols(); ++x) {
      const auto id = static_cast<std::size_t>(segmentation.labels.at<int>(y, x));
      ++sizes[id];
      const auto px = features.pixel(y, x);
      std::size_t offset = 0;
      for (const auto& g : vocabulary.groups) {
        const int w = g.assign(px.subspan(static_cast<std::size_t>(g.first_channel), static_cast<std::size_t>(g.dims)));
        hist[id][offset + static_cast<std::size_t>(w)] += 1.0;
        offset += static_cast<std::size_t>(g.count());
      }
    }
  }
  for (std::size_t s = 0; s < hist.size(); ++s) {
    if (sizes[s] == 0) throw InvalidArgument("segment " + std::to_string(s) + " has no pixels");
    for (auto& v : hist[s]) v /= sizes[s];
  }
  return hist;
}

}  // namespace reid
