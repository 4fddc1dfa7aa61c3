#include <gtest/gtest.h>

#include <thread>

#include "reid/data/dataset.hpp"
#include "reid/data/fixture.hpp"
#include "reid/error.hpp"
#include "reid/pipeline.hpp"
#include "reid/service/client.hpp"
#include "reid/service/server.hpp"
#include "reid/skeleton/skeleton.hpp"
#include "test_util.hpp"

namespace reid {
namespace {

// ---- Configuration ---------------------------------------------------------

TEST(Config, EmptyObjectKeepsDefaults) {
  const PipelineConfig c = config_from_json(nlohmann::json::object());
  EXPECT_EQ(c.descriptor.features.lbp_window, 11);
  EXPECT_EQ(c.descriptor.pca_dim, 64);
  EXPECT_EQ(c.tag_neighbors, 25u);
  EXPECT_EQ(c.color_space, NamingSpace::kLab);
}

TEST(Config, JsonRoundTrips) {
  PipelineConfig c;
  c.descriptor.pca_dim = 12;
  c.descriptor.scope = PoolingScope::kWholeBody;
  c.descriptor.skeleton_weight = 2.5;
  c.segmentation.k = 250;
  c.bow.words_per_group = 9;
  c.match_radius = 0.4;
  c.vote_min = 3;
  c.color_space = NamingSpace::kRgb;
  const auto j = config_to_json(c);
  EXPECT_EQ(config_to_json(config_from_json(j)), j);
  EXPECT_EQ(config_from_json(j).descriptor.scope, PoolingScope::kWholeBody);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  using nlohmann::json;
  EXPECT_THROW(config_from_json(json{{"pca_dimension", 3}}), DataError);
  EXPECT_THROW(config_from_json(json{{"bow", {{"words", 3}}}}), DataError);
  EXPECT_THROW(config_from_json(json{{"pca_dim", "many"}}), DataError);
  EXPECT_THROW(config_from_json(json{{"pca_dim", 0}}), DataError);
  EXPECT_THROW(config_from_json(json{{"pooling", "sideways"}}), DataError);
  EXPECT_THROW(config_from_json(json{{"color_space", "hsv"}}), DataError);
  EXPECT_THROW(config_from_json(json::array()), DataError);
}

TEST(Config, LoadsFromFile) {
  test::TempDir dir("cfg");
  write_text_file(dir / "c.json", R"({"pca_dim": 5, "segmentation": {"min_size": 7}})");
  const auto c = load_config(dir / "c.json");
  EXPECT_EQ(c.descriptor.pca_dim, 5);
  EXPECT_EQ(c.segmentation.min_size, 7);
}

TEST(Weights, FileRoundTripsAndValidates) {
  test::TempDir dir("w");
  save_weights(dir / "w.json", {0.75, 1.5});
  const auto w = load_weights(dir / "w.json");
  EXPECT_EQ(w.global, 0.75);
  EXPECT_EQ(w.transfer, 1.5);
  write_text_file(dir / "bad.json", R"({"global": 0, "transfer": 0})");
  EXPECT_THROW(load_weights(dir / "bad.json"), DataError);
  write_text_file(dir / "partial.json", R"({"global": 1})");
  EXPECT_THROW(load_weights(dir / "partial.json"), DataError);
}

// ---- End to end on the synthetic corpus ------------------------------------

class Trained : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new test::TempDir("pipe");
    FixtureOptions o;
    o.seed = 5;
    o.subjects = 4;
    o.frames_per_subject = 3;
    o.probe_frames = 1;
    o.annotated_images = 10;
    generate_fixture(dir_->path(), o);

    config_ = new PipelineConfig();
    config_->descriptor.pca_dim = 6;
    config_->tag_neighbors = 4;
    config_->bow.words_per_group = 12;
    config_->bow.pixel_stride = 4;
    const fs::path models = dir_->path() / "models";
    fs::create_directories(models);

    images_ = new std::vector<AnnotatedImage>(load_annotated(dir_->path() / "annotated"));
    // Coarse sampling keeps training short; accuracy is not under test here.
    SkinHairTrainOptions skin_options;
    skin_options.pixel_stride = 6;
    skin_options.optimizer.max_epochs = 100;
    const auto skin_hair = train_skin_hair(*images_, config_->descriptor.features, skin_options);
    skin_hair.save((models / model_file::kSkinHair).string());
    GlobalTrainOptions global_options;
    global_options.pixel_stride = 6;
    global_options.optimizer.max_epochs = 100;
    train_global(*images_, config_->descriptor.features, global_options)
        .model.save((models / model_file::kGlobal).string());
    std::vector<FeatureMap> maps;
    for (const auto& img : *images_) {
      maps.push_back(person_features(person_view(img), skin_hair, config_->descriptor.features));
    }
    train_bow_vocabulary(maps, config_->bow).save((models / model_file::kBow).string());

    samples_ = new std::vector<FrameSample>();
    for (const auto& seq : index_corpus(dir_->path()).train) {
      for (auto& s : extract_sequence(seq, skin_hair, config_->descriptor)) samples_->push_back(std::move(s));
    }
    pca_ = new PcaModel(train_descriptor_model(*samples_, config_->descriptor));
    pca_->save((models / model_file::kPca).string());

    models_ = new ParseModels(ParseModels::load(models));
    std::vector<FashionEntry> entries;
    for (const auto& img : *images_) entries.push_back(make_fashion_entry(img, *models_, *pca_, *config_));
    save_fashion_store(dir_->path() / "fashion", entries);
    fashion_ = new FashionGallery(std::move(entries));
  }

  static void TearDownTestSuite() {
    delete fashion_;
    delete models_;
    delete pca_;
    delete samples_;
    delete images_;
    delete config_;
    delete dir_;
  }

  static fs::path root() { return dir_->path(); }

  static test::TempDir* dir_;
  static PipelineConfig* config_;
  static std::vector<AnnotatedImage>* images_;
  static std::vector<FrameSample>* samples_;
  static PcaModel* pca_;
  static ParseModels* models_;
  static FashionGallery* fashion_;
};

test::TempDir* Trained::dir_ = nullptr;
PipelineConfig* Trained::config_ = nullptr;
std::vector<AnnotatedImage>* Trained::images_ = nullptr;
std::vector<FrameSample>* Trained::samples_ = nullptr;
PcaModel* Trained::pca_ = nullptr;
ParseModels* Trained::models_ = nullptr;
FashionGallery* Trained::fashion_ = nullptr;

TEST_F(Trained, EveryFixtureFramePassesTheGate) {
  EXPECT_EQ(samples_->size(), 12u);
  for (const auto& s : *samples_) {
    EXPECT_EQ(s.pooled.size(), pooled_dimension(config_->descriptor));
    EXPECT_FALSE(s.sequence_id.empty());
  }
  const auto first = index_corpus(root()).train.front();
  EXPECT_EQ(extract_sequence(first, models_->skin_hair, config_->descriptor, 1).size(), 1u);
}

TEST_F(Trained, IdentityVectorsHaveCompressedPlusSkeletonLength) {
  for (const auto& s : *samples_) {
    const auto v = identity_vector(s, *pca_, 1.0);
    EXPECT_EQ(v.size(), 6u + kSkeletonFeatureCount);
    for (double x : v) EXPECT_TRUE(std::isfinite(x));
  }
}

TEST_F(Trained, ProbesFindTheirSubject) {
  const auto ids = load_identities(root() / "identities.tsv");
  const auto index = index_corpus(root());
  std::vector<GalleryEntry> entries;
  for (const auto& s : *samples_) entries.push_back({ids.at(s.sequence_id), s.sequence_id, identity_vector(s, *pca_, 1.0)});
  const Gallery gallery(static_cast<std::uint32_t>(entries.front().descriptor.size()), entries);
  ASSERT_EQ(index.test.size(), 4u);
  for (const auto& seq : index.test) {
    for (const auto& s : extract_sequence(seq, models_->skin_hair, config_->descriptor)) {
      EXPECT_EQ(gallery.identify(identity_vector(s, *pca_, 1.0), 1)[0].subject_id, ids.at(seq.filename().string()));
    }
  }
}

TEST_F(Trained, FashionStoreReloadsIdentically) {
  const auto back = load_fashion_store(root() / "fashion");
  ASSERT_EQ(back.size(), fashion_->entries().size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].image_id, fashion_->entries()[i].image_id);
    EXPECT_EQ(back[i].descriptor, fashion_->entries()[i].descriptor);
    EXPECT_EQ(back[i].tags, fashion_->entries()[i].tags);
  }
}

TEST_F(Trained, ParseStaysInsideMaskAndPredictedTags) {
  const auto& vocab = Vocabulary::canonical();
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& img = (*images_)[i];
    const PersonView view = person_view(img);
    const FeatureMap f = person_features(view, models_->skin_hair, config_->descriptor.features);
    const auto& descriptor = fashion_->entries()[i].descriptor;
    const auto parse = parse_person(view, f, descriptor, *fashion_, *models_, *config_, i);
    const TagSet allowed = parse_label_set(parse.tags);
    for (int y = 0; y < parse.labels.rows; ++y) {
      for (int x = 0; x < parse.labels.cols; ++x) {
        const int l = parse.labels.at<int>(y, x);
        EXPECT_TRUE(allowed.count(l));
        if (view.mask.at<std::uint8_t>(y, x) == 0) EXPECT_EQ(l, vocab.null());
      }
    }
    for (const auto& c : item_colors(view.rgb, parse, NamingSpace::kLab)) {
      EXPECT_TRUE(parse.tags.count(c.label));
      EXPECT_FALSE(vocab.is_non_clothing(c.label));
    }
  }
}

TEST_F(Trained, WeightCorpusLeavesImagesOutOfTheirOwnRetrieval) {
  const std::vector<AnnotatedImage> two(images_->begin(), images_->begin() + 2);
  const auto corpus = weight_search_corpus(two, *fashion_, *models_, *pca_, *config_);
  ASSERT_EQ(corpus.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(corpus[i].truth.type(), CV_32SC1);
    EXPECT_EQ(corpus[i].truth.size(), two[i].rgb.size());
    // Same likelihoods as an explicit leave-one-out parse.
    const PersonView view = person_view(two[i]);
    const FeatureMap f = person_features(view, models_->skin_hair, config_->descriptor.features);
    const auto l = parse_likelihoods(view, f, fashion_->entries()[i].descriptor, *fashion_, *models_, *config_, i);
    const TagSet candidates = parse_label_set(l.predicted);
    EXPECT_EQ(corpus[i].scores.labels, std::vector<LabelId>(candidates.begin(), candidates.end()));
  }
  const auto result = optimize_weights(corpus);
  EXPECT_GE(result.accuracy, foreground_accuracy(corpus, {1, 1}).accuracy());
}

TEST_F(Trained, ServerParseTagsMatchesLocalPipeline) {
  ServerOptions o;
  o.gallery_path = root() / "server.ridg";
  o.dim = 3;
  o.fashion_dir = root() / "fashion";
  o.model_dir = root() / "models";
  o.config = *config_;
  Server server(o);
  const auto port = server.listen();
  std::thread loop([&] { server.serve(); });
  {
    Client c("127.0.0.1", port);
    const auto& vocab = Vocabulary::canonical();
    const std::size_t i = 0;
    const auto& descriptor = fashion_->entries()[i].descriptor;

    // Tags only.
    const auto tags = c.parse_tags({4, descriptor, std::nullopt});
    std::vector<std::string> want;
    for (LabelId t : fashion_->retrieve_tags(descriptor, 4, config_->vote_min)) want.push_back(vocab.name(t));
    ASSERT_EQ(tags.tags.size(), want.size());
    for (std::size_t t = 0; t < want.size(); ++t) {
      EXPECT_EQ(tags.tags[t].name, want[t]);
      EXPECT_FALSE(tags.tags[t].color);
    }

    // With the frame: the full parse plus colors.
    const PersonView view = person_view((*images_)[i]);
    const auto reply = c.parse_tags({4, descriptor, to_wire(view.rgb, view.mask, view.pose)});
    const FeatureMap f = person_features(view, models_->skin_hair, config_->descriptor.features);
    const auto parse = parse_person(view, f, descriptor, *fashion_, *models_, *config_);
    std::map<LabelId, ColorTerm> colors;
    for (const auto& ic : item_colors(view.rgb, parse, config_->color_space)) colors[ic.label] = ic.term;
    ASSERT_EQ(reply.tags.size(), parse.tags.size());
    std::size_t t = 0;
    for (LabelId l : parse.tags) {
      EXPECT_EQ(reply.tags[t].name, vocab.name(l));
      const auto it = colors.find(l);
      EXPECT_EQ(reply.tags[t].color, it == colors.end() ? std::nullopt : std::optional(it->second));
      ++t;
    }

    EXPECT_THROW(c.parse_tags({4, {1.0}, std::nullopt}), RemoteError);
  }
  server.stop();
  loop.join();
}

}  // namespace
}  // namespace reid
