#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reid/data/types.hpp"
#include "reid/parsing/transfer_parse.hpp"
#include "reid/retrieval/kd_tree.hpp"

namespace reid {

// An annotated image in the fashion gallery with its precomputed superpixel
// data. `label_means` holds M(l, s) under the global model the store was
// built with.
struct FashionEntry {
  std::string image_id;
  std::vector<double> descriptor;  // compressed clothing descriptor
  TagSet tags;                     // clothing tags only
  Skeleton2D pose;
  SuperpixelSet superpixels;
  std::vector<std::vector<double>> label_means;
};

// Directory layout:
//   fashion.ridg                    gallery file (entry index, image id, descriptor)
//   entries/<id>.segments.png       16-bit superpixel ids
//   entries/<id>.bow                u32 count, u32 dim, count x dim f64
//   entries/<id>.means              same layout, superpixel x label
//   entries/<id>.tags               one tag name per line
//   entries/<id>.pose.json          2D pose, for pose-normalized centroids
void save_fashion_store(const std::filesystem::path& dir, std::span<const FashionEntry> entries);
std::vector<FashionEntry> load_fashion_store(const std::filesystem::path& dir);

// f64 matrix sidecar (count + dim header).
std::vector<std::uint8_t> serialize_matrix(const std::vector<std::vector<double>>& rows, std::size_t dim);
std::vector<std::vector<double>> deserialize_matrix(std::span<const std::uint8_t> bytes, const std::string& context);

class FashionGallery {
 public:
  // Throws InvalidArgument when empty or when descriptors differ in size.
  explicit FashionGallery(std::vector<FashionEntry> entries);

  const std::vector<FashionEntry>& entries() const { return entries_; }
  std::size_t dim() const { return index_.dim(); }

  // K nearest entries by clothing descriptor, optionally leaving one entry out.
  std::vector<Neighbor> retrieve(std::span<const double> descriptor, std::size_t k,
                                 std::optional<std::size_t> exclude = std::nullopt) const;

  // Tags voted by the retrieved entries (see vote_tags).
  TagSet vote(std::span<const Neighbor> neighbors, std::size_t vote_min) const;

  TagSet retrieve_tags(std::span<const double> descriptor, std::size_t k, std::size_t vote_min,
                       std::optional<std::size_t> exclude = std::nullopt) const;

  std::vector<TransferSource> sources(std::span<const Neighbor> neighbors) const;

 private:
  std::vector<FashionEntry> entries_;
  KdIndex index_;
};

}  // namespace reid
