#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace reid {

using LabelId = int;

// The canonical clothing label vocabulary: 53 clothing labels followed by
// hair, skin and null. Line number in assets/vocabulary.txt = label id.
class Vocabulary {
 public:
  static constexpr std::size_t kClothingLabels = 53;
  static constexpr std::size_t kSize = 56;

  static const Vocabulary& canonical();
  static Vocabulary parse(std::string_view text);

  std::size_t size() const { return names_.size(); }
  const std::string& name(LabelId id) const { return names_.at(static_cast<std::size_t>(id)); }
  std::optional<LabelId> find(std::string_view name) const;
  // Throws DataError for unknown names.
  LabelId id(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }

  LabelId hair() const { return hair_; }
  LabelId skin() const { return skin_; }
  LabelId null() const { return null_; }
  // True for hair, skin and null.
  bool is_non_clothing(LabelId id) const { return id == hair_ || id == skin_ || id == null_; }

  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  LabelId hair_ = -1;
  LabelId skin_ = -1;
  LabelId null_ = -1;
};

}  // namespace reid
