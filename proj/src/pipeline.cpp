#include "reid/pipeline.hpp"

#include <cmath>
#include <fstream>

#include "reid/data/dataset.hpp"
#include "reid/error.hpp"
#include "reid/features/pixel_features.hpp"
#include "reid/parsing/transfer_parse.hpp"
#include "reid/skeleton/skeleton.hpp"

namespace reid {

namespace {

using nlohmann::json;

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw DataError("config: " + where + " must be an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok |= key == a;
    if (!ok) throw DataError("config: unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw DataError(std::string("config: bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

PipelineConfig config_from_json(const json& j) {
  check_keys(j, {"lbp_window", "hog_cell", "include_pose_channels", "pooling", "pca_dim", "skeleton_weight",
                 "segmentation", "bow", "match_radius", "tag_neighbors", "vote_min", "color_space"},
             "top level");
  PipelineConfig c;
  read(j, "lbp_window", c.descriptor.features.lbp_window);
  read(j, "hog_cell", c.descriptor.features.hog_cell);
  read(j, "include_pose_channels", c.descriptor.include_pose_channels);
  if (j.contains("pooling")) {
    const auto p = j.at("pooling").get<std::string>();
    if (p == "per_part") {
      c.descriptor.scope = PoolingScope::kPerPart;
    } else if (p == "whole_body") {
      c.descriptor.scope = PoolingScope::kWholeBody;
    } else {
      throw DataError("config: pooling must be per_part or whole_body");
    }
  }
  read(j, "pca_dim", c.descriptor.pca_dim);
  read(j, "skeleton_weight", c.descriptor.skeleton_weight);
  if (j.contains("segmentation")) {
    const auto& s = j.at("segmentation");
    check_keys(s, {"k", "sigma", "min_size"}, "segmentation");
    read(s, "k", c.segmentation.k);
    read(s, "sigma", c.segmentation.sigma);
    read(s, "min_size", c.segmentation.min_size);
  }
  if (j.contains("bow")) {
    const auto& b = j.at("bow");
    check_keys(b, {"words_per_group", "pixel_stride", "max_iterations"}, "bow");
    read(b, "words_per_group", c.bow.words_per_group);
    read(b, "pixel_stride", c.bow.pixel_stride);
    read(b, "max_iterations", c.bow.max_iterations);
  }
  read(j, "match_radius", c.match_radius);
  read(j, "tag_neighbors", c.tag_neighbors);
  read(j, "vote_min", c.vote_min);
  if (j.contains("color_space")) {
    const auto s = j.at("color_space").get<std::string>();
    if (s == "lab") {
      c.color_space = NamingSpace::kLab;
    } else if (s == "rgb") {
      c.color_space = NamingSpace::kRgb;
    } else {
      throw DataError("config: color_space must be lab or rgb");
    }
  }
  if (c.descriptor.features.lbp_window < 3 || c.descriptor.features.hog_cell < 1 || c.descriptor.pca_dim < 1 ||
      c.tag_neighbors < 1 || c.match_radius < 0.0) {
    throw DataError("config: value out of range");
  }
  return c;
}

json config_to_json(const PipelineConfig& c) {
  return {
      {"lbp_window", c.descriptor.features.lbp_window},
      {"hog_cell", c.descriptor.features.hog_cell},
      {"include_pose_channels", c.descriptor.include_pose_channels},
      {"pooling", c.descriptor.scope == PoolingScope::kPerPart ? "per_part" : "whole_body"},
      {"pca_dim", c.descriptor.pca_dim},
      {"skeleton_weight", c.descriptor.skeleton_weight},
      {"segmentation", {{"k", c.segmentation.k}, {"sigma", c.segmentation.sigma}, {"min_size", c.segmentation.min_size}}},
      {"bow",
       {{"words_per_group", c.bow.words_per_group},
        {"pixel_stride", c.bow.pixel_stride},
        {"max_iterations", c.bow.max_iterations}}},
      {"match_radius", c.match_radius},
      {"tag_neighbors", c.tag_neighbors},
      {"vote_min", c.vote_min},
      {"color_space", c.color_space == NamingSpace::kLab ? "lab" : "rgb"},
  };
}

PipelineConfig load_config(const fs::path& path) { return config_from_json(read_json_file(path)); }

ParseWeights load_weights(const fs::path& path) {
  const json j = read_json_file(path);
  ParseWeights w;
  try {
    w.global = j.at("global").get<double>();
    w.transfer = j.at("transfer").get<double>();
  } catch (const json::exception& e) {
    throw DataError("weights file " + path.string() + ": " + e.what());
  }
  if (!w.valid()) throw DataError("weights file " + path.string() + ": weights must be nonnegative, not both zero");
  return w;
}

void save_weights(const fs::path& path, const ParseWeights& weights) {
  write_text_file(path, dump_json({{"global", weights.global}, {"transfer", weights.transfer}}));
}

PersonView person_view(const Frame& frame) {
  return {frame.rgb, frame.person_mask, project(frame.skeleton, frame.calibration)};
}

PersonView person_view(const AnnotatedImage& image) { return {image.rgb, image.foreground_mask(), image.pose}; }

FeatureMap person_features(const PersonView& view, const SkinHairModel& skin_hair, const FeatureConfig& config) {
  return compute_pixel_features(view.rgb, view.pose, skin_hair, config);
}

SkeletonFeatures skeleton_measurements(const PersonView& view) { return skeleton_features(view.pose, view.mask); }

FrameSample describe_view(const PersonView& view, const SkinHairModel& skin_hair, const DescriptorConfig& config) {
  FrameSample s;
  const FeatureMap f = person_features(view, skin_hair, config.features);
  s.pooled = clothing_vector(f, view.mask, view.pose, config);
  s.skeleton = skeleton_measurements(view);
  return s;
}

std::vector<FrameSample> extract_sequence(const fs::path& dir, const SkinHairModel& skin_hair,
                                          const DescriptorConfig& config, std::size_t max_frames) {
  std::vector<FrameSample> out;
  for (const auto& frame : load_sequence(dir)) {
    if (max_frames > 0 && out.size() >= max_frames) break;
    if (!gate_frame(frame)) continue;
    FrameSample s = describe_view(person_view(frame), skin_hair, config);
    s.sequence_id = frame.sequence_id.empty() ? dir.filename().string() : frame.sequence_id;
    s.frame_index = frame.frame_index;
    out.push_back(std::move(s));
  }
  return out;
}

PcaModel train_descriptor_model(std::span<const FrameSample> samples, const DescriptorConfig& config) {
  std::vector<std::vector<double>> pooled;
  std::vector<SkeletonFeatures> skeleton;
  for (const auto& s : samples) {
    pooled.push_back(s.pooled);
    skeleton.push_back(scale_normalize(s.skeleton));
  }
  PcaModel model = train_pca(pooled, config.pca_dim, pooled_channel_map(config));
  model.skeleton_stats = SkeletonStats::estimate(skeleton);
  return model;
}

std::vector<double> identity_vector(const FrameSample& sample, const PcaModel& model, double skeleton_weight) {
  // Both blocks are scaled to unit expected energy so that the skeleton weight
  // alone sets their balance.
  auto clothing = compress(model, sample.pooled).values;
  const double energy = model.retained_variance();
  if (energy > 0.0) {
    for (double& v : clothing) v /= std::sqrt(energy);
  }
  auto skeleton = normalize_descriptor(sample.skeleton, model.skeleton_stats);
  for (double& v : skeleton.values) v /= std::sqrt(static_cast<double>(kSkeletonFeatureCount));
  return identity_descriptor(clothing, skeleton, skeleton_weight);
}

ParseModels ParseModels::load(const fs::path& dir) {
  ParseModels m;
  m.skin_hair = SkinHairModel::load((dir / model_file::kSkinHair).string());
  m.global = GlobalParseModel::load((dir / model_file::kGlobal).string());
  m.bow = BowVocabulary::load((dir / model_file::kBow).string());
  if (fs::exists(dir / model_file::kWeights)) m.weights = load_weights(dir / model_file::kWeights);
  return m;
}

FashionEntry make_fashion_entry(const AnnotatedImage& image, const ParseModels& models, const PcaModel& pca,
                                const PipelineConfig& config) {
  const PersonView view = person_view(image);
  const FeatureMap f = person_features(view, models.skin_hair, config.descriptor.features);
  FashionEntry e;
  e.image_id = image.image_id;
  e.descriptor = compress(pca, clothing_vector(f, view.mask, view.pose, config.descriptor)).values;
  const auto& vocab = Vocabulary::canonical();
  for (LabelId t : image.tags) {
    if (!vocab.is_non_clothing(t)) e.tags.insert(t);
  }
  e.pose = image.pose;
  e.superpixels = describe_superpixels(f, oversegment(image.rgb, config.segmentation), image.pose, models.bow);
  e.label_means = superpixel_label_means(e.superpixels.segmentation, global_probabilities(models.global, f),
                                         parse_label_set(e.tags));
  return e;
}

ParseLikelihoods parse_likelihoods(const PersonView& view, const FeatureMap& features,
                                   std::span<const double> clothing_descriptor, const FashionGallery& fashion,
                                   const ParseModels& models, const PipelineConfig& config,
                                   std::optional<std::size_t> exclude) {
  const auto neighbors = fashion.retrieve(clothing_descriptor, config.tag_neighbors, exclude);
  ParseLikelihoods out;
  out.predicted = fashion.vote(neighbors, config.vote_min);
  out.global = global_parse(models.global, features, out.predicted);
  const SuperpixelSet query = describe_superpixels(features, oversegment(view.rgb, config.segmentation), view.pose,
                                                   models.bow);
  const auto sources = fashion.sources(neighbors);
  out.transfer = transfer_parse(query, sources, out.predicted, config.match_radius);
  return out;
}

ParseResult parse_person(const PersonView& view, const FeatureMap& features,
                         std::span<const double> clothing_descriptor, const FashionGallery& fashion,
                         const ParseModels& models, const PipelineConfig& config,
                         std::optional<std::size_t> exclude) {
  const auto l = parse_likelihoods(view, features, clothing_descriptor, fashion, models, config, exclude);
  return combine(l.global, l.transfer, models.weights, l.predicted, view.mask);
}

std::vector<ItemColor> item_colors(const cv::Mat& rgb, const ParseResult& parse, NamingSpace space) {
  std::vector<ItemColor> out;
  for (const auto& [label, mask] : parse.items) {
    ItemColor c;
    c.label = label;
    c.dominant = dominant_color(rgb, mask);
    c.term = name_color(c.dominant, space);
    out.push_back(c);
  }
  return out;
}

std::vector<WeightSearchImage> weight_search_corpus(std::span<const AnnotatedImage> images,
                                                    const FashionGallery& fashion, const ParseModels& models,
                                                    const PcaModel& pca, const PipelineConfig& config) {
  std::vector<WeightSearchImage> out;
  for (const auto& img : images) {
    std::optional<std::size_t> self;
    for (std::size_t i = 0; i < fashion.entries().size(); ++i) {
      if (fashion.entries()[i].image_id == img.image_id) self = i;
    }
    const PersonView view = person_view(img);
    const FeatureMap f = person_features(view, models.skin_hair, config.descriptor.features);
    const auto descriptor = compress(pca, clothing_vector(f, view.mask, view.pose, config.descriptor)).values;
    const auto l = parse_likelihoods(view, f, descriptor, fashion, models, config, self);
    WeightSearchImage w;
    w.scores = log_likelihoods(l.global, l.transfer, parse_label_set(l.predicted));
    img.labels.convertTo(w.truth, CV_32SC1);
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace reid
