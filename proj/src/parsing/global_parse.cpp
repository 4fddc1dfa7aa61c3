#include "reid/parsing/global_parse.hpp"

#include "reid/data/binary_io.hpp"
#include "reid/error.hpp"

namespace reid {

namespace {

constexpr std::string_view kMagic = "RIDL";

}  // namespace

std::vector<std::uint8_t> GlobalParseModel::serialize() const {
  ByteWriter w;
  w.raw(kMagic);
  w.u16(kVersion);
  w.u32(feature_dim);
  w.u16(static_cast<std::uint16_t>(labels.size()));
  for (const auto& m : labels) {
    w.u8(m ? 1 : 0);
    if (!m) continue;
    if (m->weights.size() != feature_dim) throw InvalidArgument("global parse weights do not match feature dim");
    w.f64(m->bias);
    w.f64s(m->weights);
  }
  return w.take();
}

GlobalParseModel GlobalParseModel::deserialize(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes, "global parse model");
  r.expect_magic(kMagic);
  const auto version = r.u16();
  if (version != kVersion) throw DataError("global parse model: unsupported version " + std::to_string(version));
  GlobalParseModel m;
  m.feature_dim = r.u32();
  const auto n = r.u16();
  if (n != Vocabulary::kSize) throw DataError("global parse model: label count does not match the vocabulary");
  for (std::uint16_t i = 0; i < n; ++i) {
    const auto present = r.u8();
    if (present > 1) throw DataError("global parse model: bad presence flag");
    if (!present) {
      m.labels.emplace_back();
      continue;
    }
    BinaryLogistic b;
    b.bias = r.f64();
    b.weights = r.f64s(m.feature_dim);
    m.labels.emplace_back(std::move(b));
  }
  if (!r.at_end()) throw DataError("global parse model: trailing bytes");
  return m;
}

void GlobalParseModel::save(const std::string& path) const { write_file_atomic(path, serialize()); }

GlobalParseModel GlobalParseModel::load(const std::string& path) { return deserialize(read_file_bytes(path)); }

GlobalTrainResult train_global(const Eigen::MatrixXd& x, std::span<const int> labels,
                               const LogisticTrainOptions& optimizer) {
  if (x.rows() == 0) throw InvalidArgument("global parse training set is empty");
  std::vector<int> present(Vocabulary::kSize, 0);
  for (int l : labels) {
    if (l < 0 || static_cast<std::size_t>(l) >= Vocabulary::kSize) throw DataError("label id out of range");
    present[static_cast<std::size_t>(l)] = 1;
  }
  std::vector<int> classes;
  GlobalTrainResult out;
  for (std::size_t l = 0; l < Vocabulary::kSize; ++l) {
    if (present[l]) {
      classes.push_back(static_cast<int>(l));
    } else {
      out.omitted.push_back(static_cast<LabelId>(l));
    }
  }
  auto fit = train_one_vs_all(x, labels, classes, optimizer);
  out.model.feature_dim = static_cast<std::uint32_t>(x.cols());
  out.model.labels.resize(Vocabulary::kSize);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    out.model.labels[static_cast<std::size_t>(classes[i])] = std::move(fit.models[i]);
  }
  return out;
}

GlobalTrainResult train_global(std::span<const AnnotatedImage> annotated, const FeatureConfig& config,
                               const GlobalTrainOptions& options) {
  const auto& channels = global_parse_channels();
  const int stride = std::max(1, options.pixel_stride);
  std::vector<double> rows;
  std::vector<int> labels;
  for (const auto& img : annotated) {
    const FeatureMap f = compute_base_features(img.rgb, img.pose, config);
    for (int y = 0; y < f.rows(); y += stride) {
      for (int x = 0; x < f.cols(); x += stride) {
        const auto px = f.pixel(y, x);
        for (int c : channels) rows.push_back(px[static_cast<std::size_t>(c)]);
        labels.push_back(img.labels.at<std::uint16_t>(y, x));
      }
    }
  }
  const auto d = static_cast<Eigen::Index>(channels.size());
  const auto n = static_cast<Eigen::Index>(labels.size());
  const Eigen::MatrixXd x = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      rows.data(), n, d);
  return train_global(x, labels, options.optimizer);
}

LabelMaps global_probabilities(const GlobalParseModel& model, const FeatureMap& features) {
  const auto& channels = global_parse_channels();
  if (model.feature_dim != channels.size()) throw InvalidArgument("global parse model has the wrong feature dim");
  if (features.channels() < channel::kBaseCount) throw InvalidArgument("feature map lacks the base channels");
  LabelMaps out = LabelMaps::zeros(features.rows(), features.cols());
  std::vector<double> x(channels.size());
  for (int y = 0; y < features.rows(); ++y) {
    for (int xx = 0; xx < features.cols(); ++xx) {
      const auto px = features.pixel(y, xx);
      for (std::size_t i = 0; i < channels.size(); ++i) x[i] = px[static_cast<std::size_t>(channels[i])];
      for (std::size_t l = 0; l < model.labels.size(); ++l) {
        if (model.labels[l]) out.maps[l].at<double>(y, xx) = model.labels[l]->predict(x);
      }
    }
  }
  return out;
}

LabelMaps restrict_to(LabelMaps probabilities, const TagSet& tags) {
  for (std::size_t l = 0; l < probabilities.maps.size(); ++l) {
    if (!tags.count(static_cast<LabelId>(l))) probabilities.maps[l].setTo(0.0);
  }
  return probabilities;
}

LabelMaps global_parse(const GlobalParseModel& model, const FeatureMap& features, const TagSet& tags) {
  return restrict_to(global_probabilities(model, features), tags);
}

}  // namespace reid
