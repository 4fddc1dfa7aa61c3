#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "reid/color/semantic_color.hpp"
#include "reid/data/types.hpp"
#include "reid/descriptor/appearance.hpp"
#include "reid/descriptor/pca.hpp"
#include "reid/features/skin_hair.hpp"
#include "reid/parsing/bag_of_words.hpp"
#include "reid/parsing/combine.hpp"
#include "reid/parsing/fashion_store.hpp"
#include "reid/parsing/global_parse.hpp"
#include "reid/parsing/segmentation.hpp"
#include "reid/parsing/weight_search.hpp"

namespace reid {

struct PipelineConfig {
  DescriptorConfig descriptor;
  SegmentationParams segmentation;
  BowTrainOptions bow;
  double match_radius = 0.25;
  std::size_t tag_neighbors = 25;
  std::size_t vote_min = 2;
  NamingSpace color_space = NamingSpace::kLab;
};

// Missing keys keep their defaults; unknown keys are a DataError.
PipelineConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const PipelineConfig& config);
PipelineConfig load_config(const std::filesystem::path& path);

// File names inside a model directory.
namespace model_file {
inline constexpr const char* kSkinHair = "skin_hair.ridm";
inline constexpr const char* kPca = "pca.ridp";
inline constexpr const char* kGlobal = "global.ridl";
inline constexpr const char* kBow = "bow.ridv";
inline constexpr const char* kWeights = "weights.json";
}  // namespace model_file

ParseWeights load_weights(const std::filesystem::path& path);
void save_weights(const std::filesystem::path& path, const ParseWeights& weights);

// A person observation in image coordinates.
struct PersonView {
  cv::Mat rgb;   // CV_8UC3
  cv::Mat mask;  // CV_8UC1
  Skeleton2D pose;
};

PersonView person_view(const Frame& frame);
PersonView person_view(const AnnotatedImage& image);

FeatureMap person_features(const PersonView& view, const SkinHairModel& skin_hair, const FeatureConfig& config);

// Raw skeleton measurements with the lowest mask row as floor.
SkeletonFeatures skeleton_measurements(const PersonView& view);

// Pooled clothing vector and skeleton measurements of one frame.
struct FrameSample {
  std::string sequence_id;
  int frame_index = 0;
  std::vector<double> pooled;
  SkeletonFeatures skeleton{};
};

FrameSample describe_view(const PersonView& view, const SkinHairModel& skin_hair, const DescriptorConfig& config);

// Gated frames of a sequence directory; `max_frames` = 0 keeps all.
std::vector<FrameSample> extract_sequence(const std::filesystem::path& dir, const SkinHairModel& skin_hair,
                                          const DescriptorConfig& config, std::size_t max_frames = 0);

// PCA over pooled vectors, z-scored per pooled channel, plus skeleton
// statistics, bundled in one model. Output dimension from `config.pca_dim`.
PcaModel train_descriptor_model(std::span<const FrameSample> samples, const DescriptorConfig& config);

// [compressed clothing || weight * z-scored skeleton].
std::vector<double> identity_vector(const FrameSample& sample, const PcaModel& model, double skeleton_weight);

// Models needed to parse clothing.
struct ParseModels {
  SkinHairModel skin_hair;
  GlobalParseModel global;
  BowVocabulary bow;
  ParseWeights weights;

  // Reads the model files from a model directory; weights default to (1, 1)
  // when weights.json is absent.
  static ParseModels load(const std::filesystem::path& dir);
};

FashionEntry make_fashion_entry(const AnnotatedImage& image, const ParseModels& models, const PcaModel& pca,
                                const PipelineConfig& config);

struct ParseLikelihoods {
  LabelMaps global;
  LabelMaps transfer;
  TagSet predicted;
};

// Retrieval of D from the fashion gallery, then the global and transferred
// likelihood maps of one person.
ParseLikelihoods parse_likelihoods(const PersonView& view, const FeatureMap& features,
                                   std::span<const double> clothing_descriptor, const FashionGallery& fashion,
                                   const ParseModels& models, const PipelineConfig& config,
                                   std::optional<std::size_t> exclude = std::nullopt);

ParseResult parse_person(const PersonView& view, const FeatureMap& features,
                         std::span<const double> clothing_descriptor, const FashionGallery& fashion,
                         const ParseModels& models, const PipelineConfig& config,
                         std::optional<std::size_t> exclude = std::nullopt);

struct ItemColor {
  LabelId label = 0;
  Rgb dominant;
  ColorTerm term = ColorTerm::kBlack;
};

std::vector<ItemColor> item_colors(const cv::Mat& rgb, const ParseResult& parse, NamingSpace space);

// Weight-search corpus from annotated images. An image that is itself in the
// fashion gallery (same id) is left out of its own retrieval.
std::vector<WeightSearchImage> weight_search_corpus(std::span<const AnnotatedImage> images,
                                                    const FashionGallery& fashion, const ParseModels& models,
                                                    const PcaModel& pca, const PipelineConfig& config);

}  // namespace reid
