#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "reid/assets.hpp"
#include "reid/data/dataset.hpp"
#include "reid/data/fixture.hpp"
#include "reid/error.hpp"
#include "reid/skeleton/skeleton.hpp"
#include "test_util.hpp"

namespace reid {
namespace {

namespace fs = std::filesystem;
using test::TempDir;

std::map<std::string, std::string> directory_contents(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = test::read_text(e.path());
  }
  return out;
}

TEST(Vocabulary, HasFiftyThreeClothingLabelsThenHairSkinNull) {
  const auto& v = Vocabulary::canonical();
  EXPECT_EQ(v.size(), 56u);
  EXPECT_EQ(Vocabulary::kClothingLabels, 53u);
  EXPECT_EQ(v.hair(), 53);
  EXPECT_EQ(v.skin(), 54);
  EXPECT_EQ(v.null(), 55);
  EXPECT_EQ(v.name(v.hair()), "hair");
  EXPECT_EQ(v.name(v.skin()), "skin");
  EXPECT_EQ(v.name(v.null()), "null");
  for (LabelId id = 0; id < 53; ++id) EXPECT_FALSE(v.is_non_clothing(id)) << v.name(id);
}

TEST(Vocabulary, NamesAreUniqueAndLineNumberIsId) {
  const auto& v = Vocabulary::canonical();
  auto names = v.names();
  std::sort(names.begin(), names.end());
  EXPECT_EQ(std::adjacent_find(names.begin(), names.end()), names.end());
  for (LabelId id = 0; id < static_cast<LabelId>(v.size()); ++id) EXPECT_EQ(v.id(v.name(id)), id);
  EXPECT_THROW(v.id("cloak_of_invisibility"), DataError);
}

TEST(Vocabulary, EmbeddedAssetMatchesFileOnDisk) {
  EXPECT_EQ(std::string(assets::kVocabularyTxt), test::read_text(fs::path(REID_SOURCE_DIR) / "assets/vocabulary.txt"));
}

TEST(Calibration, ValidatesFocalLengthAndPrincipalPoint) {
  Calibration c{500, 500, 320, 240, 640, 480};
  EXPECT_NO_THROW(c.validate());
  c.fx = 0;
  EXPECT_THROW(c.validate(), DataError);
  c = {500, 500, 640, 240, 640, 480};
  EXPECT_THROW(c.validate(), DataError);
}

TEST(GroundTruth, ParsesTabSeparatedRecords) {
  const auto& v = Vocabulary::canonical();
  const auto recs = parse_ground_truth("seq01\tshirt,jeans\n");
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].sequence_id, "seq01");
  EXPECT_EQ(recs[0].tags, (TagSet{v.id("shirt"), v.id("jeans")}));
}

TEST(GroundTruth, UnknownTagNamesTagAndLine) {
  try {
    parse_ground_truth("seq01\tshirt\nseq02\tcloak_of_invisibility\n");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("cloak_of_invisibility"), std::string::npos);
    EXPECT_NE(what.find("line 2"), std::string::npos);
  }
}

TEST(GroundTruth, EmptyFileGivesEmptyList) { EXPECT_TRUE(parse_ground_truth("").empty()); }

TEST(GroundTruth, FormatRoundTrips) {
  const std::string text = "a\tjeans,shirt\nb\tskin,hair,dress\n";
  const auto recs = parse_ground_truth(text);
  EXPECT_EQ(parse_ground_truth(format_ground_truth(recs))[1].tags, recs[1].tags);
}

class FixtureTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new TempDir("fixture");
    FixtureOptions o;
    o.seed = 1;
    o.subjects = 5;
    o.frames_per_subject = 4;
    o.annotated_images = 2;
    subjects_ = new std::vector<SubjectSpec>(generate_fixture(dir_->path(), o));
  }
  static void TearDownTestSuite() {
    delete subjects_;
    delete dir_;
  }
  static TempDir* dir_;
  static std::vector<SubjectSpec>* subjects_;
};
TempDir* FixtureTest::dir_ = nullptr;
std::vector<SubjectSpec>* FixtureTest::subjects_ = nullptr;

TEST_F(FixtureTest, WritesTwentyLoadableFrames) {
  const auto idx = index_corpus(dir_->path());
  ASSERT_EQ(idx.train.size(), 5u);
  std::size_t frames = 0;
  for (const auto& seq : idx.train) {
    const auto loaded = load_sequence(seq);
    for (std::size_t i = 0; i < loaded.size(); ++i) {
      const Frame& f = loaded[i];
      EXPECT_EQ(f.frame_index, static_cast<int>(i));
      EXPECT_EQ(f.rgb.size(), f.depth.size());
      EXPECT_EQ(f.rgb.size(), f.person_mask.size());
      EXPECT_EQ(f.rgb.type(), CV_8UC3);
      EXPECT_EQ(f.depth.type(), CV_16UC1);
      if (f.skeleton.any_tracked()) { EXPECT_GT(cv::countNonZero(f.person_mask), 0); }
      for (const auto& j : f.skeleton.joints) {
        if (j.state == TrackingState::kTracked) { EXPECT_GT(j.position.z, 0.0); }
      }
    }
    frames += loaded.size();
  }
  EXPECT_EQ(frames, 20u);
}

TEST_F(FixtureTest, SameSeedIsByteIdentical) {
  TempDir again("fixture_again");
  FixtureOptions o;
  o.seed = 1;
  o.subjects = 5;
  o.frames_per_subject = 4;
  o.annotated_images = 2;
  generate_fixture(again.path(), o);
  EXPECT_EQ(directory_contents(dir_->path()), directory_contents(again.path()));
}

TEST_F(FixtureTest, JsonFilesReserializeByteEqual) {
  for (const auto& e : fs::recursive_directory_iterator(dir_->path())) {
    if (e.path().extension() != ".json") continue;
    EXPECT_EQ(dump_json(read_json_file(e.path())), test::read_text(e.path())) << e.path();
  }
  const auto gt = dir_->path() / "ground_truth.tsv";
  EXPECT_EQ(format_ground_truth(load_ground_truth(gt)), test::read_text(gt));
  const auto ids = dir_->path() / "identities.tsv";
  EXPECT_EQ(format_identities(load_identities(ids)), test::read_text(ids));
}

TEST_F(FixtureTest, SkeletonsAgreeWithMasks) {
  for (const auto& seq : index_corpus(dir_->path()).train) {
    for (const auto& f : load_sequence(seq)) {
      const auto pose = project(f.skeleton, f.calibration);
      for (auto id : {JointId::kHead, JointId::kSpine, JointId::kHipCenter, JointId::kKneeL, JointId::kKneeR}) {
        const auto& p = pose[id].position;
        const int u = static_cast<int>(std::lround(p.u));
        const int v = static_cast<int>(std::lround(p.v));
        ASSERT_TRUE(u >= 0 && v >= 0 && u < f.width() && v < f.height());
        EXPECT_GT(f.person_mask.at<std::uint8_t>(v, u), 0) << joint_name(id) << " in " << seq;
      }
    }
  }
}

TEST_F(FixtureTest, AnnotatedImagesUseOnlyTaggedLabels) {
  const auto images = load_annotated(dir_->path() / "annotated");
  ASSERT_EQ(images.size(), 2u);
  const auto& v = Vocabulary::canonical();
  for (const auto& img : images) {
    for (int y = 0; y < img.labels.rows; ++y) {
      for (int x = 0; x < img.labels.cols; ++x) {
        const LabelId l = img.labels.at<std::uint16_t>(y, x);
        EXPECT_TRUE(img.tags.count(l) || v.is_non_clothing(l));
      }
    }
  }
}

TEST_F(FixtureTest, SubjectsHaveDistinctClothing) {
  for (std::size_t i = 0; i < subjects_->size(); ++i) {
    for (std::size_t j = i + 1; j < subjects_->size(); ++j) {
      EXPECT_FALSE((*subjects_)[i].top.color == (*subjects_)[j].top.color);
    }
  }
}

SkeletonFeatures first_frame_features(const fs::path& root) {
  const auto frames = load_sequence(index_corpus(root).train.front());
  const auto& f = frames.front();
  return scale_normalize(skeleton_features(project(f.skeleton, f.calibration), f.person_mask));
}

TEST(Fixture, DifferentSeedsGiveDifferentProportions) {
  TempDir a("seed1"), b("seed2");
  FixtureOptions o;
  o.subjects = 1;
  o.frames_per_subject = 1;
  o.seed = 1;
  generate_fixture(a.path(), o);
  o.seed = 2;
  generate_fixture(b.path(), o);
  const auto fa = first_frame_features(a.path());
  const auto fb = first_frame_features(b.path());
  double d2 = 0.0;
  for (std::size_t k = 0; k < fa.size(); ++k) d2 += (fa[k] - fb[k]) * (fa[k] - fb[k]);
  EXPECT_GT(std::sqrt(d2), 1e-3);
}

TEST(Loader, DimensionMismatchNamesFile) {
  TempDir dir("mismatch");
  Frame f;
  f.calibration = {20, 20, 10, 10, 20, 20};
  f.rgb = cv::Mat(20, 20, CV_8UC3, cv::Scalar(1, 2, 3));
  f.depth = cv::Mat(10, 10, CV_16UC1, cv::Scalar(1000));
  f.person_mask = cv::Mat(20, 20, CV_8UC1, cv::Scalar(255));
  write_text_file(dir / "calib.json", dump_json(calibration_to_json(f.calibration)));
  save_frame(dir.path(), f);
  try {
    load_sequence(dir.path());
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("frame_000000.depth.png"), std::string::npos);
  }
}

TEST(Loader, MissingSkeletonFileGivesUntrackedSkeleton) {
  TempDir dir("noskel");
  Frame f;
  f.calibration = {20, 20, 10, 10, 20, 20};
  f.rgb = cv::Mat(20, 20, CV_8UC3, cv::Scalar(1, 2, 3));
  f.depth = cv::Mat(20, 20, CV_16UC1, cv::Scalar(1000));
  f.person_mask = cv::Mat::zeros(20, 20, CV_8UC1);
  write_text_file(dir / "calib.json", dump_json(calibration_to_json(f.calibration)));
  save_frame(dir.path(), f);
  fs::remove(dir / "frame_000000.skel.json");
  const auto frames = load_sequence(dir.path());
  ASSERT_EQ(frames.size(), 1u);
  EXPECT_FALSE(frames[0].skeleton.any_tracked());
  EXPECT_FALSE(frames[0].face_detected);
}

TEST(Loader, MalformedJsonNamesFile) {
  TempDir dir("badjson");
  write_text_file(dir / "calib.json", "{ not json");
  try {
    load_sequence(dir.path());
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("calib.json"), std::string::npos);
  }
}

TEST(Loader, RgbRoundTripsThroughPng) {
  TempDir dir("png");
  std::mt19937_64 rng(3);
  const cv::Mat rgb = test::random_rgb(rng, 7, 9);
  write_rgb_png(dir / "x.png", rgb);
  const cv::Mat back = read_rgb_png(dir / "x.png");
  EXPECT_EQ(cv::norm(rgb, back, cv::NORM_INF), 0.0);
}

TEST(BenchmarkLayout, FiftyTrainingAndFiftySixTestingSequences) {
  TempDir dir("bench");
  generate_benchmark_layout(dir.path(), 1, 50, 56);
  const auto idx = index_corpus(dir.path());
  EXPECT_EQ(idx.train.size(), 50u);
  EXPECT_EQ(idx.test.size(), 56u);
}

TEST(Joints, NamesAndMirrorsAreConsistent) {
  for (int i = 0; i < kJointCount; ++i) {
    const auto id = static_cast<JointId>(i);
    EXPECT_EQ(joint_from_name(joint_name(id)), id);
    EXPECT_EQ(mirror_joint(mirror_joint(id)), id);
  }
  EXPECT_EQ(mirror_joint(JointId::kHandL), JointId::kHandR);
  EXPECT_EQ(mirror_joint(JointId::kHead), JointId::kHead);
}

}  // namespace
}  // namespace reid
