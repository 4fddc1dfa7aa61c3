#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "reid/data/types.hpp"
#include "reid/retrieval/kd_tree.hpp"

namespace reid {

struct GalleryEntry {
  std::uint32_t subject_id = 0;
  std::string name;
  std::vector<double> descriptor;

  bool operator==(const GalleryEntry&) const = default;
};

struct GalleryFile {
  static constexpr std::uint16_t kVersion = 1;
  std::uint32_t dim = 0;
  std::vector<GalleryEntry> entries;
};

std::vector<std::uint8_t> serialize_gallery(const GalleryFile& gallery);
GalleryFile deserialize_gallery(std::span<const std::uint8_t> bytes);
void save_gallery(const GalleryFile& gallery, const std::string& path);
GalleryFile load_gallery(const std::string& path);

struct RankedSubject {
  std::uint32_t subject_id = 0;
  double distance = 0.0;
};

// Immutable entries plus their KD index.
class Gallery {
 public:
  // Throws InvalidArgument on an empty gallery or descriptors of the wrong dimension.
  Gallery(std::uint32_t dim, std::vector<GalleryEntry> entries);

  std::uint32_t dim() const { return dim_; }
  const std::vector<GalleryEntry>& entries() const { return entries_; }
  const KdIndex& index() const { return index_; }

  // k nearest entries collapsed to distinct subjects by best distance, ties
  // by subject id.
  std::vector<RankedSubject> identify(std::span<const double> query, std::size_t k) const;

 private:
  std::uint32_t dim_;
  std::vector<GalleryEntry> entries_;
  KdIndex index_;
};

// Tags carried by at least `vote_min` of the retrieved neighbors, always
// extended with skin, hair and null.
TagSet vote_tags(std::span<const TagSet> neighbor_tags, std::size_t vote_min);

}  // namespace reid
