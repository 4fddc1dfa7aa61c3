#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "reid/data/types.hpp"

namespace reid {

namespace fs = std::filesystem;

// Sequence directory layout:
//   calib.json
//   frame_%06d.rgb.png    8-bit RGB
//   frame_%06d.depth.png  16-bit grayscale, millimeters, 0 = invalid
//   frame_%06d.mask.png   8-bit, nonzero = person
//   frame_%06d.skel.json  joints, tracking states, face_detected (optional)
//
// Frames are returned in index order. A frame without a skeleton file gets an
// all-NOT_TRACKED skeleton and face_detected = false.
std::vector<Frame> load_sequence(const fs::path& dir);

// Writes one frame into a sequence directory. calib.json is written by
// save_calibration.
void save_frame(const fs::path& dir, const Frame& frame);

nlohmann::json calibration_to_json(const Calibration& calib);
Calibration calibration_from_json(const nlohmann::json& j);
nlohmann::json skeleton_to_json(const Skeleton3D& skeleton, bool face_detected);
void skeleton_from_json(const nlohmann::json& j, Skeleton3D& skeleton, bool& face_detected);
nlohmann::json pose_to_json(const Skeleton2D& pose);
Skeleton2D pose_from_json(const nlohmann::json& j);

// Serialized text exactly as written to disk (two-space indent, trailing
// newline), so generated files re-serialize byte-identically.
std::string dump_json(const nlohmann::json& j);
nlohmann::json read_json_file(const fs::path& path);
void write_text_file(const fs::path& path, const std::string& text);

// Ground-truth tag file: one `sequence_id<TAB>tag1,tag2,...` record per line.
std::vector<GroundTruthTags> load_ground_truth(const fs::path& path);
std::vector<GroundTruthTags> parse_ground_truth(const std::string& text);
std::string format_ground_truth(const std::vector<GroundTruthTags>& records);

// Corpus root layout:
//   train/<sequence>/   enrollment sequences
//   test/<sequence>/    probe sequences
//   annotated/          img_%06d.{rgb.png,labels.png,json}
//   identities.tsv      sequence_id<TAB>subject_id
//   ground_truth.tsv    per-sequence clothing tags
struct CorpusIndex {
  std::vector<fs::path> train;
  std::vector<fs::path> test;
};

CorpusIndex index_corpus(const fs::path& root);

std::map<std::string, std::uint32_t> load_identities(const fs::path& path);
std::string format_identities(const std::map<std::string, std::uint32_t>& ids);

std::vector<AnnotatedImage> load_annotated(const fs::path& dir);
void save_annotated(const fs::path& dir, int index, const AnnotatedImage& image);

// PNG helpers handling the RGB <-> BGR swap at the OpenCV boundary.
cv::Mat read_rgb_png(const fs::path& path);
void write_rgb_png(const fs::path& path, const cv::Mat& rgb);
cv::Mat read_png_unchanged(const fs::path& path);
void write_png(const fs::path& path, const cv::Mat& image);

std::string frame_stem(int index);

}  // namespace reid
