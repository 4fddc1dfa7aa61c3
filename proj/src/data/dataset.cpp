#include "reid/data/dataset.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "reid/error.hpp"

namespace reid {

namespace {

constexpr std::array<std::string_view, kJointCount> kJointNames = {
    "HIP_CENTER", "SPINE",      "SHOULDER_CENTER", "HEAD",    "SHOULDER_L", "ELBOW_L", "WRIST_L",
    "HAND_L",     "SHOULDER_R", "ELBOW_R",         "WRIST_R", "HAND_R",     "HIP_L",   "KNEE_L",
    "ANKLE_L",    "FOOT_L",     "HIP_R",           "KNEE_R",  "ANKLE_R",    "FOOT_R",
};

std::string indexed_name(const char* prefix, int index, const char* suffix) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s%06d%s", prefix, index, suffix);
  return buf;
}

template <typename Fn>
auto with_file_context(const fs::path& path, Fn&& fn) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  } catch (const DataError& e) {
    const std::string what = e.what();
    if (what.find(path.string()) != std::string::npos) throw;
    throw DataError(path.string() + ": " + what);
  }
}

void check_same_size(const cv::Mat& reference, const cv::Mat& other, const fs::path& other_path) {
  if (reference.size() != other.size()) {
    throw DataError(other_path.string() + ": dimension mismatch (" + std::to_string(other.cols) +
                    "x" + std::to_string(other.rows) + " vs rgb " +
                    std::to_string(reference.cols) + "x" + std::to_string(reference.rows) + ")");
  }
}

}  // namespace

void Calibration::validate() const {
  if (!(fx > 0.0) || !(fy > 0.0)) throw DataError("calibration: focal lengths must be positive");
  if (width <= 0 || height <= 0) throw DataError("calibration: image size must be positive");
  if (!(cx >= 0.0 && cx < width && cy >= 0.0 && cy < height)) {
    throw DataError("calibration: principal point outside the image");
  }
}

std::string_view joint_name(JointId id) { return kJointNames.at(static_cast<std::size_t>(id)); }

std::optional<JointId> joint_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kJointNames.size(); ++i) {
    if (kJointNames[i] == name) return static_cast<JointId>(i);
  }
  return std::nullopt;
}

JointId mirror_joint(JointId id) {
  const auto name = std::string(joint_name(id));
  const auto n = name.size();
  if (n > 2 && name[n - 2] == '_' && (name[n - 1] == 'L' || name[n - 1] == 'R')) {
    auto mirrored = name;
    mirrored[n - 1] = name[n - 1] == 'L' ? 'R' : 'L';
    return *joint_from_name(mirrored);
  }
  return id;
}

std::string_view tracking_state_name(TrackingState state) {
  switch (state) {
    case TrackingState::kTracked:
      return "TRACKED";
    case TrackingState::kInferred:
      return "INFERRED";
    case TrackingState::kNotTracked:
      break;
  }
  return "NOT_TRACKED";
}

std::optional<TrackingState> tracking_state_from_name(std::string_view name) {
  if (name == "TRACKED") return TrackingState::kTracked;
  if (name == "INFERRED") return TrackingState::kInferred;
  if (name == "NOT_TRACKED") return TrackingState::kNotTracked;
  return std::nullopt;
}

cv::Mat AnnotatedImage::foreground_mask() const {
  cv::Mat mask(labels.size(), CV_8UC1);
  const auto null_id = static_cast<std::uint16_t>(Vocabulary::canonical().null());
  for (int y = 0; y < labels.rows; ++y) {
    for (int x = 0; x < labels.cols; ++x) {
      mask.at<std::uint8_t>(y, x) = labels.at<std::uint16_t>(y, x) != null_id ? 255 : 0;
    }
  }
  return mask;
}

std::string frame_stem(int index) { return indexed_name("frame_", index, ""); }

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path.string() + ": cannot open");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": malformed JSON: " + e.what());
  }
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(path.string() + ": cannot write");
  out << text;
}

nlohmann::json calibration_to_json(const Calibration& c) {
  return {{"fx", c.fx}, {"fy", c.fy}, {"cx", c.cx}, {"cy", c.cy},
          {"width", c.width}, {"height", c.height}};
}

Calibration calibration_from_json(const nlohmann::json& j) {
  Calibration c;
  c.fx = j.at("fx").get<double>();
  c.fy = j.at("fy").get<double>();
  c.cx = j.at("cx").get<double>();
  c.cy = j.at("cy").get<double>();
  c.width = j.at("width").get<int>();
  c.height = j.at("height").get<int>();
  c.validate();
  return c;
}

nlohmann::json skeleton_to_json(const Skeleton3D& skeleton, bool face_detected) {
  auto joints = nlohmann::json::array();
  for (int i = 0; i < kJointCount; ++i) {
    const auto& jt = skeleton.joints[static_cast<std::size_t>(i)];
    joints.push_back({{"name", joint_name(static_cast<JointId>(i))},
                      {"position", {jt.position.x, jt.position.y, jt.position.z}},
                      {"state", tracking_state_name(jt.state)}});
  }
  return {{"face_detected", face_detected}, {"joints", joints}};
}

namespace {

template <typename J, typename ReadPosition>
void read_joints(const nlohmann::json& list, Skeleton<J>& skeleton, ReadPosition&& read_position) {
  if (!list.is_array() || list.size() != kJointCount) {
    throw DataError("skeleton must list exactly " + std::to_string(kJointCount) + " joints");
  }
  std::array<bool, kJointCount> seen{};
  for (const auto& item : list) {
    const auto name = item.at("name").get<std::string>();
    const auto id = joint_from_name(name);
    if (!id) throw DataError("unknown joint '" + name + "'");
    const auto idx = static_cast<std::size_t>(*id);
    if (seen[idx]) throw DataError("duplicate joint '" + name + "'");
    seen[idx] = true;
    const auto state_name = item.at("state").get<std::string>();
    const auto state = tracking_state_from_name(state_name);
    if (!state) throw DataError("unknown tracking state '" + state_name + "'");
    skeleton.joints[idx].state = *state;
    read_position(item, skeleton.joints[idx], name);
  }
}

}  // namespace

void skeleton_from_json(const nlohmann::json& j, Skeleton3D& skeleton, bool& face_detected) {
  face_detected = j.at("face_detected").get<bool>();
  read_joints(j.at("joints"), skeleton, [](const nlohmann::json& item, Joint3D& jt,
                                           const std::string& name) {
    const auto& p = item.at("position");
    if (!p.is_array() || p.size() != 3) throw DataError("joint '" + name + "' position needs 3 values");
    jt.position = {p[0].get<double>(), p[1].get<double>(), p[2].get<double>()};
    if (jt.state == TrackingState::kTracked && !(jt.position.z > 0.0)) {
      throw DataError("tracked joint '" + name + "' has non-positive depth");
    }
  });
}

nlohmann::json pose_to_json(const Skeleton2D& pose) {
  auto joints = nlohmann::json::array();
  for (int i = 0; i < kJointCount; ++i) {
    const auto& jt = pose.joints[static_cast<std::size_t>(i)];
    joints.push_back({{"name", joint_name(static_cast<JointId>(i))},
                      {"uv", {jt.position.u, jt.position.v}},
                      {"state", tracking_state_name(jt.state)}});
  }
  return joints;
}

Skeleton2D pose_from_json(const nlohmann::json& j) {
  Skeleton2D pose;
  read_joints(j, pose, [](const nlohmann::json& item, Joint2D& jt, const std::string& name) {
    const auto& p = item.at("uv");
    if (!p.is_array() || p.size() != 2) throw DataError("joint '" + name + "' uv needs 2 values");
    jt.position = {p[0].get<double>(), p[1].get<double>()};
  });
  return pose;
}

cv::Mat read_rgb_png(const fs::path& path) {
  cv::Mat bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
  if (bgr.empty()) throw DataError(path.string() + ": cannot read image");
  cv::Mat rgb;
  cv::cvtColor(bgr, rgb, cv::COLOR_BGR2RGB);
  return rgb;
}

void write_rgb_png(const fs::path& path, const cv::Mat& rgb) {
  cv::Mat bgr;
  cv::cvtColor(rgb, bgr, cv::COLOR_RGB2BGR);
  write_png(path, bgr);
}

cv::Mat read_png_unchanged(const fs::path& path) {
  cv::Mat img = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (img.empty()) throw DataError(path.string() + ": cannot read image");
  return img;
}

void write_png(const fs::path& path, const cv::Mat& image) {
  if (!cv::imwrite(path.string(), image)) throw DataError(path.string() + ": cannot write image");
}

std::vector<Frame> load_sequence(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw DataError(dir.string() + ": not a directory");
  const auto calib_path = dir / "calib.json";
  const Calibration calib =
      with_file_context(calib_path, [&] { return calibration_from_json(read_json_file(calib_path)); });

  static const std::regex kRgbName(R"(frame_(\d{6})\.rgb\.png)");
  std::vector<int> indices;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::smatch m;
    const auto name = entry.path().filename().string();
    if (std::regex_match(name, m, kRgbName)) indices.push_back(std::stoi(m[1].str()));
  }
  std::sort(indices.begin(), indices.end());

  std::vector<Frame> frames;
  frames.reserve(indices.size());
  for (int index : indices) {
    const auto stem = frame_stem(index);
    Frame f;
    f.sequence_id = dir.filename().string();
    f.frame_index = index;
    f.calibration = calib;

    const auto rgb_path = dir / (stem + ".rgb.png");
    f.rgb = read_rgb_png(rgb_path);
    if (f.rgb.cols != calib.width || f.rgb.rows != calib.height) {
      throw DataError(rgb_path.string() + ": dimension mismatch with calib.json");
    }

    const auto depth_path = dir / (stem + ".depth.png");
    f.depth = read_png_unchanged(depth_path);
    if (f.depth.type() != CV_16UC1) throw DataError(depth_path.string() + ": expected 16-bit grayscale");
    check_same_size(f.rgb, f.depth, depth_path);

    const auto mask_path = dir / (stem + ".mask.png");
    cv::Mat mask = read_png_unchanged(mask_path);
    if (mask.channels() != 1) throw DataError(mask_path.string() + ": expected single-channel mask");
    check_same_size(f.rgb, mask, mask_path);
    mask.convertTo(f.person_mask, CV_8UC1);
    cv::threshold(f.person_mask, f.person_mask, 0, 255, cv::THRESH_BINARY);

    const auto skel_path = dir / (stem + ".skel.json");
    if (fs::exists(skel_path)) {
      with_file_context(skel_path, [&] {
        skeleton_from_json(read_json_file(skel_path), f.skeleton, f.face_detected);
        return 0;
      });
    }
    if (f.skeleton.any_tracked() && cv::countNonZero(f.person_mask) == 0) {
      throw DataError(mask_path.string() + ": empty person mask for a tracked skeleton");
    }
    frames.push_back(std::move(f));
  }
  return frames;
}

void save_frame(const fs::path& dir, const Frame& frame) {
  const auto stem = frame_stem(frame.frame_index);
  write_rgb_png(dir / (stem + ".rgb.png"), frame.rgb);
  write_png(dir / (stem + ".depth.png"), frame.depth);
  write_png(dir / (stem + ".mask.png"), frame.person_mask);
  write_text_file(dir / (stem + ".skel.json"),
                  dump_json(skeleton_to_json(frame.skeleton, frame.face_detected)));
}

std::vector<GroundTruthTags> parse_ground_truth(const std::string& text) {
  const auto& vocab = Vocabulary::canonical();
  std::vector<GroundTruthTags> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw DataError("ground truth line " + std::to_string(line_no) + ": expected sequence_id<TAB>tags");
    }
    GroundTruthTags rec;
    rec.sequence_id = line.substr(0, tab);
    std::istringstream tags(line.substr(tab + 1));
    std::string tag;
    while (std::getline(tags, tag, ',')) {
      if (tag.empty()) continue;
      const auto id = vocab.find(tag);
      if (!id) {
        throw DataError("ground truth line " + std::to_string(line_no) + ": unknown tag '" + tag + "'");
      }
      rec.tags.insert(*id);
    }
    if (rec.tags.empty()) {
      throw DataError("ground truth line " + std::to_string(line_no) + ": no tags");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<GroundTruthTags> load_ground_truth(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string() + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return with_file_context(path, [&] { return parse_ground_truth(ss.str()); });
}

std::string format_ground_truth(const std::vector<GroundTruthTags>& records) {
  const auto& vocab = Vocabulary::canonical();
  std::string out;
  for (const auto& rec : records) {
    out += rec.sequence_id;
    out += '\t';
    bool first = true;
    for (auto id : rec.tags) {
      if (!first) out += ',';
      out += vocab.name(id);
      first = false;
    }
    out += '\n';
  }
  return out;
}

CorpusIndex index_corpus(const fs::path& root) {
  if (!fs::is_directory(root)) throw DataError(root.string() + ": not a directory");
  const auto list = [](const fs::path& split) {
    std::vector<fs::path> seqs;
    if (!fs::is_directory(split)) return seqs;
    for (const auto& entry : fs::directory_iterator(split)) {
      if (entry.is_directory() && fs::exists(entry.path() / "calib.json")) seqs.push_back(entry.path());
    }
    std::sort(seqs.begin(), seqs.end());
    return seqs;
  };
  return {list(root / "train"), list(root / "test")};
}

std::map<std::string, std::uint32_t> load_identities(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path.string() + ": cannot open");
  std::map<std::string, std::uint32_t> ids;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError(path.string() + ": line " + std::to_string(line_no) + ": expected sequence_id<TAB>subject_id");
    }
    try {
      ids[line.substr(0, tab)] = static_cast<std::uint32_t>(std::stoul(line.substr(tab + 1)));
    } catch (const std::exception&) {
      throw DataError(path.string() + ": line " + std::to_string(line_no) + ": bad subject id");
    }
  }
  return ids;
}

std::string format_identities(const std::map<std::string, std::uint32_t>& ids) {
  std::string out;
  for (const auto& [seq, id] : ids) out += seq + "\t" + std::to_string(id) + "\n";
  return out;
}

std::vector<AnnotatedImage> load_annotated(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw DataError(dir.string() + ": not a directory");
  static const std::regex kName(R"(img_(\d{6})\.json)");
  std::vector<int> indices;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::smatch m;
    const auto name = entry.path().filename().string();
    if (std::regex_match(name, m, kName)) indices.push_back(std::stoi(m[1].str()));
  }
  std::sort(indices.begin(), indices.end());

  const auto& vocab = Vocabulary::canonical();
  std::vector<AnnotatedImage> out;
  for (int index : indices) {
    const auto meta_path = dir / indexed_name("img_", index, ".json");
    const auto labels_path = dir / indexed_name("img_", index, ".labels.png");
    AnnotatedImage img;
    img.rgb = read_rgb_png(dir / indexed_name("img_", index, ".rgb.png"));
    img.labels = read_png_unchanged(labels_path);
    if (img.labels.type() != CV_16UC1) throw DataError(labels_path.string() + ": expected 16-bit label ids");
    check_same_size(img.rgb, img.labels, labels_path);
    with_file_context(meta_path, [&] {
      const auto meta = read_json_file(meta_path);
      img.image_id = meta.at("image_id").get<std::string>();
      for (const auto& tag : meta.at("tags")) img.tags.insert(vocab.id(tag.get<std::string>()));
      img.pose = pose_from_json(meta.at("joints"));
      return 0;
    });
    for (int y = 0; y < img.labels.rows; ++y) {
      for (int x = 0; x < img.labels.cols; ++x) {
        const int id = img.labels.at<std::uint16_t>(y, x);
        if (id >= static_cast<int>(vocab.size())) {
          throw DataError(labels_path.string() + ": label id " + std::to_string(id) + " out of range");
        }
        if (!vocab.is_non_clothing(id) && !img.tags.contains(id)) {
          throw DataError(labels_path.string() + ": label '" + vocab.name(id) + "' missing from tag set");
        }
      }
    }
    out.push_back(std::move(img));
  }
  return out;
}

void save_annotated(const fs::path& dir, int index, const AnnotatedImage& image) {
  const auto& vocab = Vocabulary::canonical();
  write_rgb_png(dir / indexed_name("img_", index, ".rgb.png"), image.rgb);
  write_png(dir / indexed_name("img_", index, ".labels.png"), image.labels);
  auto tags = nlohmann::json::array();
  for (auto id : image.tags) tags.push_back(vocab.name(id));
  const nlohmann::json meta = {
      {"image_id", image.image_id}, {"tags", tags}, {"joints", pose_to_json(image.pose)}};
  write_text_file(dir / indexed_name("img_", index, ".json"), dump_json(meta));
}

}  // namespace reid
