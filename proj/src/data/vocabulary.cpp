#include "reid/data/vocabulary.hpp"

#include <sstream>

#include "reid/assets.hpp"
#include "reid/error.hpp"

namespace reid {

const Vocabulary& Vocabulary::canonical() {
  static const Vocabulary vocab = parse(assets::kVocabularyTxt);
  return vocab;
}

Vocabulary Vocabulary::parse(std::string_view text) {
  Vocabulary v;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (v.find(line)) throw DataError("duplicate vocabulary entry '" + line + "'");
    v.names_.push_back(line);
  }
  const auto require = [&](const char* name) {
    auto id = v.find(name);
    if (!id) throw DataError(std::string("vocabulary lacks '") + name + "'");
    return *id;
  };
  v.hair_ = require("hair");
  v.skin_ = require("skin");
  v.null_ = require("null");
  return v;
}

std::optional<LabelId> Vocabulary::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<LabelId>(i);
  }
  return std::nullopt;
}

LabelId Vocabulary::id(std::string_view name) const {
  auto found = find(name);
  if (!found) throw DataError("unknown label '" + std::string(name) + "'");
  return *found;
}

}  // namespace reid
