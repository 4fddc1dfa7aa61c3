#include "reid/features/skin_hair.hpp"

#include "reid/data/binary_io.hpp"
#include "reid/error.hpp"
#include "reid/features/pixel_features.hpp"

namespace reid {

namespace {
constexpr std::string_view kMagic = "RIDM";
}

std::vector<std::uint8_t> SkinHairModel::serialize() const {
  ByteWriter w;
  w.raw(kMagic);
  w.u16(kVersion);
  w.u16(2);
  w.u32(feature_dim);
  for (const auto* m : {&skin, &hair}) {
    if (m->weights.size() != feature_dim) throw InvalidArgument("skin/hair weights do not match feature dim");
    w.f64(m->bias);
    w.f64s(m->weights);
  }
  return w.take();
}

SkinHairModel SkinHairModel::deserialize(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes, "skin/hair model");
  r.expect_magic(kMagic);
  const auto version = r.u16();
  if (version != kVersion) throw DataError("skin/hair model: unsupported version " + std::to_string(version));
  const auto classes = r.u16();
  if (classes != 2) throw DataError("skin/hair model: expected 2 classes");
  SkinHairModel m;
  m.feature_dim = r.u32();
  for (auto* c : {&m.skin, &m.hair}) {
    c->bias = r.f64();
    c->weights = r.f64s(m.feature_dim);
  }
  if (!r.at_end()) throw DataError("skin/hair model: trailing bytes");
  return m;
}

void SkinHairModel::save(const std::string& path) const { write_file_atomic(path, serialize()); }

SkinHairModel SkinHairModel::load(const std::string& path) { return deserialize(read_file_bytes(path)); }

SkinHairModel train_skin_hair(std::span<const AnnotatedImage> annotated, const FeatureConfig& config,
                              const SkinHairTrainOptions& options) {
  const auto& vocab = Vocabulary::canonical();
  const int stride = std::max(1, options.pixel_stride);
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  bool has_skin = false;
  bool has_hair = false;
  for (const auto& img : annotated) {
    const FeatureMap f = compute_base_features(img.rgb, img.pose, config);
    for (int y = 0; y < f.rows(); y += stride) {
      for (int x = 0; x < f.cols(); x += stride) {
        const int label = img.labels.at<std::uint16_t>(y, x);
        has_skin |= label == vocab.skin();
        has_hair |= label == vocab.hair();
        const auto px = f.pixel(y, x);
        rows.emplace_back(px.begin(), px.end());
        labels.push_back(label);
      }
    }
  }
  if (!has_skin) throw DataError("skin/hair training: annotations contain no skin pixels");
  if (!has_hair) throw DataError("skin/hair training: annotations contain no hair pixels");

  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), channel::kBaseCount);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    x.row(static_cast<Eigen::Index>(i)) = Eigen::Map<const Eigen::RowVectorXd>(rows[i].data(), channel::kBaseCount);
  }
  const int classes[] = {vocab.skin(), vocab.hair()};
  auto fit = train_one_vs_all(x, labels, classes, options.optimizer);

  SkinHairModel model;
  model.feature_dim = channel::kBaseCount;
  model.skin = std::move(fit.models[0]);
  model.hair = std::move(fit.models[1]);
  return model;
}

std::array<double, 2> skin_hair_likelihood(const SkinHairModel& model, std::span<const double> features) {
  if (features.size() != model.feature_dim) {
    throw InvalidArgument("skin/hair model expects " + std::to_string(model.feature_dim) +
                          " features, got " + std::to_string(features.size()));
  }
  return {model.skin.predict(features), model.hair.predict(features)};
}

}  // namespace reid
