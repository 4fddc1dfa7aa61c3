#include "reid/parsing/fashion_store.hpp"

#include <fstream>
#include <sstream>

#include "reid/data/binary_io.hpp"
#include "reid/data/dataset.hpp"
#include "reid/data/vocabulary.hpp"
#include "reid/error.hpp"
#include "reid/retrieval/gallery.hpp"

namespace reid {

namespace {

fs::path entry_path(const fs::path& dir, const std::string& id, const char* suffix) {
  return dir / "entries" / (id + suffix);
}

std::vector<std::vector<double>> entry_descriptors(const std::vector<FashionEntry>& entries) {
  if (entries.empty()) throw InvalidArgument("fashion gallery is empty");
  std::vector<std::vector<double>> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.descriptor);
  return out;
}

}  // namespace

std::vector<std::uint8_t> serialize_matrix(const std::vector<std::vector<double>>& rows, std::size_t dim) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(rows.size()));
  w.u32(static_cast<std::uint32_t>(dim));
  for (const auto& r : rows) {
    if (r.size() != dim) throw InvalidArgument("matrix rows differ in length");
    w.f64s(r);
  }
  return w.take();
}

std::vector<std::vector<double>> deserialize_matrix(std::span<const std::uint8_t> bytes, const std::string& context) {
  ByteReader r(bytes, context);
  const auto count = r.u32();
  const auto dim = r.u32();
  std::vector<std::vector<double>> rows;
  for (std::uint32_t i = 0; i < count; ++i) rows.push_back(r.f64s(dim));
  if (!r.at_end()) throw DataError(context + ": trailing bytes");
  return rows;
}

void save_fashion_store(const fs::path& dir, std::span<const FashionEntry> entries) {
  if (entries.empty()) throw InvalidArgument("fashion gallery is empty");
  fs::create_directories(dir / "entries");
  const auto& vocab = Vocabulary::canonical();
  GalleryFile gallery;
  gallery.dim = static_cast<std::uint32_t>(entries.front().descriptor.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (e.image_id.empty() || e.image_id.find('/') != std::string::npos) {
      throw InvalidArgument("fashion entry id must be a plain file name: '" + e.image_id + "'");
    }
    gallery.entries.push_back({static_cast<std::uint32_t>(i), e.image_id, e.descriptor});

    const auto& seg = e.superpixels.segmentation;
    if (seg.count > 65535) throw InvalidArgument("too many superpixels for a 16-bit label map");
    cv::Mat ids;
    seg.labels.convertTo(ids, CV_16UC1);
    write_png(entry_path(dir, e.image_id, ".segments.png"), ids);
    write_file_atomic(entry_path(dir, e.image_id, ".bow").string(),
                      serialize_matrix(e.superpixels.bow, e.superpixels.bow.empty() ? 0 : e.superpixels.bow.front().size()));
    write_file_atomic(entry_path(dir, e.image_id, ".means").string(),
                      serialize_matrix(e.label_means, Vocabulary::kSize));
    std::string tags;
    for (LabelId t : e.tags) tags += vocab.name(t) + "\n";
    write_text_file(entry_path(dir, e.image_id, ".tags"), tags);
    write_text_file(entry_path(dir, e.image_id, ".pose.json"), dump_json(pose_to_json(e.pose)));
  }
  save_gallery(gallery, (dir / "fashion.ridg").string());
}

std::vector<FashionEntry> load_fashion_store(const fs::path& dir) {
  const auto& vocab = Vocabulary::canonical();
  const GalleryFile gallery = load_gallery((dir / "fashion.ridg").string());
  std::vector<FashionEntry> entries;
  for (const auto& g : gallery.entries) {
    FashionEntry e;
    e.image_id = g.name;
    e.descriptor = g.descriptor;
    e.pose = pose_from_json(read_json_file(entry_path(dir, g.name, ".pose.json")));

    std::ifstream tags(entry_path(dir, g.name, ".tags"));
    if (!tags) throw DataError("fashion store: missing tags for " + g.name);
    std::string line;
    while (std::getline(tags, line)) {
      if (!line.empty()) e.tags.insert(vocab.id(line));
    }

    const cv::Mat ids = read_png_unchanged(entry_path(dir, g.name, ".segments.png"));
    if (ids.type() != CV_16UC1) throw DataError("fashion store: segment map of " + g.name + " is not 16-bit");
    Segmentation seg;
    ids.convertTo(seg.labels, CV_32SC1);
    double max_id = -1.0;
    cv::minMaxLoc(ids, nullptr, &max_id);
    seg.count = static_cast<int>(max_id) + 1;

    auto& sp = e.superpixels;
    sp.bow = deserialize_matrix(read_file_bytes(entry_path(dir, g.name, ".bow").string()), "fashion BoW " + g.name);
    e.label_means =
        deserialize_matrix(read_file_bytes(entry_path(dir, g.name, ".means").string()), "fashion means " + g.name);
    if (sp.bow.size() != static_cast<std::size_t>(seg.count) || e.label_means.size() != sp.bow.size()) {
      throw DataError("fashion store: sidecars of " + g.name + " disagree on the superpixel count");
    }
    for (const auto& row : e.label_means) {
      if (row.size() != Vocabulary::kSize) throw DataError("fashion store: label means of " + g.name + " have the wrong width");
    }
    sp.sizes = segment_sizes(seg);
    sp.centroids = pose_normalized(segment_centroids(seg), e.pose, ids.cols, ids.rows);
    sp.segmentation = std::move(seg);
    entries.push_back(std::move(e));
  }
  return entries;
}

FashionGallery::FashionGallery(std::vector<FashionEntry> entries)
    : entries_(std::move(entries)), index_(entry_descriptors(entries_)) {}

std::vector<Neighbor> FashionGallery::retrieve(std::span<const double> descriptor, std::size_t k,
                                               std::optional<std::size_t> exclude) const {
  auto found = index_.knn(descriptor, exclude ? k + 1 : k);
  if (exclude) {
    std::erase_if(found, [&](const Neighbor& n) { return n.index == *exclude; });
    if (found.size() > k) found.resize(k);
  }
  return found;
}

TagSet FashionGallery::vote(std::span<const Neighbor> neighbors, std::size_t vote_min) const {
  std::vector<TagSet> tags;
  for (const auto& n : neighbors) tags.push_back(entries_.at(n.index).tags);
  return vote_tags(tags, vote_min);
}

TagSet FashionGallery::retrieve_tags(std::span<const double> descriptor, std::size_t k, std::size_t vote_min,
                                     std::optional<std::size_t> exclude) const {
  return vote(retrieve(descriptor, k, exclude), vote_min);
}

std::vector<TransferSource> FashionGallery::sources(std::span<const Neighbor> neighbors) const {
  std::vector<TransferSource> out;
  for (const auto& n : neighbors) {
    const auto& e = entries_.at(n.index);
    out.push_back({&e.superpixels, &e.label_means});
  }
  return out;
}

}  // namespace reid
