#include "reid/retrieval/gallery.hpp"

#include <algorithm>
#include <map>

#include "reid/data/binary_io.hpp"
#include "reid/data/vocabulary.hpp"
#include "reid/error.hpp"

namespace reid {

namespace {

constexpr std::string_view kMagic = "RIDG";

std::vector<std::vector<double>> descriptors_of(const std::vector<GalleryEntry>& entries) {
  std::vector<std::vector<double>> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.descriptor);
  return out;
}

}  // namespace

std::vector<std::uint8_t> serialize_gallery(const GalleryFile& gallery) {
  ByteWriter w;
  w.raw(kMagic);
  w.u16(GalleryFile::kVersion);
  w.u32(gallery.dim);
  w.u32(static_cast<std::uint32_t>(gallery.entries.size()));
  for (const auto& e : gallery.entries) {
    if (e.descriptor.size() != gallery.dim) throw InvalidArgument("gallery entry has the wrong dimension");
    w.u32(e.subject_id);
    w.str16(e.name);
    w.f64s(e.descriptor);
  }
  return w.take();
}

GalleryFile deserialize_gallery(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes, "gallery");
  r.expect_magic(kMagic);
  const auto version = r.u16();
  if (version != GalleryFile::kVersion) throw DataError("gallery: unsupported version " + std::to_string(version));
  GalleryFile g;
  g.dim = r.u32();
  const auto count = r.u32();
  for (std::uint32_t i = 0; i < count; ++i) {
    GalleryEntry e;
    e.subject_id = r.u32();
    e.name = r.str16();
    e.descriptor = r.f64s(g.dim);
    g.entries.push_back(std::move(e));
  }
  if (!r.at_end()) throw DataError("gallery: trailing bytes");
  return g;
}

void save_gallery(const GalleryFile& gallery, const std::string& path) {
  write_file_atomic(path, serialize_gallery(gallery));
}

GalleryFile load_gallery(const std::string& path) { return deserialize_gallery(read_file_bytes(path)); }

Gallery::Gallery(std::uint32_t dim, std::vector<GalleryEntry> entries)
    : dim_(dim), entries_(std::move(entries)), index_([&] {
        if (entries_.empty()) throw InvalidArgument("gallery is empty");
        for (const auto& e : entries_) {
          if (e.descriptor.size() != dim_) throw InvalidArgument("gallery entry has the wrong dimension");
        }
        return KdIndex(descriptors_of(entries_));
      }()) {}

std::vector<RankedSubject> Gallery::identify(std::span<const double> query, std::size_t k) const {
  if (query.size() != dim_) {
    throw InvalidArgument("descriptor has dimension " + std::to_string(query.size()) + ", gallery expects " +
                          std::to_string(dim_));
  }
  std::map<std::uint32_t, double> best;
  for (const auto& n : index_.knn(query, k)) {
    const auto id = entries_[n.index].subject_id;
    auto [it, inserted] = best.emplace(id, n.distance);
    if (!inserted) it->second = std::min(it->second, n.distance);
  }
  std::vector<RankedSubject> out;
  out.reserve(best.size());
  for (const auto& [id, d] : best) out.push_back({id, d});
  std::stable_sort(out.begin(), out.end(),
                   [](const RankedSubject& a, const RankedSubject& b) { return a.distance < b.distance; });
  return out;
}

TagSet vote_tags(std::span<const TagSet> neighbor_tags, std::size_t vote_min) {
  std::map<LabelId, std::size_t> votes;
  for (const auto& tags : neighbor_tags) {
    for (auto t : tags) ++votes[t];
  }
  TagSet out;
  for (const auto& [tag, n] : votes) {
    if (n >= vote_min) out.insert(tag);
  }
  const Vocabulary& vocab = Vocabulary::canonical();
  out.insert(vocab.skin());
  out.insert(vocab.hair());
  out.insert(vocab.null());
  return out;
}

}  // namespace reid
