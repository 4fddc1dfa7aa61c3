#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reid/color/semantic_color.hpp"
#include "reid/data/types.hpp"
#include "reid/error.hpp"
#include "reid/retrieval/gallery.hpp"

namespace reid {

// Wire format: u32 body length (little-endian), u8 message type, body.
enum class MessageType : std::uint8_t {
  kEnroll = 1,
  kIdentify = 2,
  kParseTags = 3,
  kOk = 4,
  kError = 5,
};

enum class ErrorCode : std::uint16_t {
  kBadRequest = 1,
  kDimensionMismatch = 2,
  kEmptyGallery = 3,
  kMissingFashionGallery = 4,
  kMalformedFrame = 5,
};

inline constexpr std::uint32_t kMaxBodyBytes = 256u << 20;

struct Message {
  MessageType type = MessageType::kOk;
  std::vector<std::uint8_t> body;

  bool operator==(const Message&) const = default;
};

// Header plus body.
std::vector<std::uint8_t> frame_message(const Message& message);

// Parses one message from the front of `bytes`. Returns nullopt and sets
// `consumed` to 0 when more bytes are needed; throws ProtocolError on an
// unknown type or oversized body.
std::optional<Message> parse_message(std::span<const std::uint8_t> bytes, std::size_t& consumed);

// Raised when the peer answers with ERROR.
class RemoteError : public ProtocolError {
 public:
  RemoteError(ErrorCode code, const std::string& message)
      : ProtocolError("server error " + std::to_string(static_cast<int>(code)) + ": " + message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Body decode failure, carrying the error code the server should answer with.
class BadMessage : public ProtocolError {
 public:
  BadMessage(ErrorCode code, const std::string& message) : ProtocolError(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct EnrollRequest {
  std::uint32_t subject_id = 0;
  std::string name;
  std::vector<double> descriptor;
  bool operator==(const EnrollRequest&) const = default;
};

struct IdentifyRequest {
  std::uint32_t k = 0;
  std::vector<double> descriptor;
  bool operator==(const IdentifyRequest&) const = default;
};

struct WireJoint {
  double u = 0.0;
  double v = 0.0;
  std::uint8_t state = 0;
  bool operator==(const WireJoint&) const = default;
};

struct WireFrame {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> rgb;   // width * height * 3, row-major R,G,B
  std::vector<std::uint8_t> mask;  // width * height
  std::array<WireJoint, kJointCount> joints{};
  bool operator==(const WireFrame&) const = default;
};

struct ParseTagsRequest {
  std::uint32_t k = 0;
  std::vector<double> descriptor;
  std::optional<WireFrame> frame;
  bool operator==(const ParseTagsRequest&) const = default;
};

struct EnrollReply {
  std::uint32_t gallery_count = 0;
  bool operator==(const EnrollReply&) const = default;
};

struct IdentifyReply {
  std::vector<RankedSubject> ranking;
  bool operator==(const IdentifyReply& o) const;
};

struct WireTag {
  std::string name;
  std::optional<ColorTerm> color;  // 0xFF on the wire when absent
  bool operator==(const WireTag&) const = default;
};

struct TagReply {
  std::vector<WireTag> tags;
  bool operator==(const TagReply&) const = default;
};

struct ErrorReply {
  std::uint16_t code = 0;
  std::string message;
  bool operator==(const ErrorReply&) const = default;
};

Message encode(const EnrollRequest& m);
Message encode(const IdentifyRequest& m);
Message encode(const ParseTagsRequest& m);
Message encode(const EnrollReply& m);
Message encode(const IdentifyReply& m);
Message encode(const TagReply& m);
Message encode(const ErrorReply& m);

// Decoders check the message type and consume the whole body; failures
// throw BadMessage (kMalformedFrame for a bad frame payload, kBadRequest
// otherwise).
EnrollRequest decode_enroll(const Message& m);
IdentifyRequest decode_identify(const Message& m);
ParseTagsRequest decode_parse_tags(const Message& m);
EnrollReply decode_enroll_reply(const Message& m);
IdentifyReply decode_identify_reply(const Message& m);
TagReply decode_tag_reply(const Message& m);
ErrorReply decode_error(const Message& m);

// Converts between the wire frame and an image-space person view.
WireFrame to_wire(const cv::Mat& rgb, const cv::Mat& mask, const Skeleton2D& pose);
void from_wire(const WireFrame& frame, cv::Mat& rgb, cv::Mat& mask, Skeleton2D& pose);

// Blocking socket helpers. read_message returns nullopt on a clean EOF
// before the first header byte.
void write_message(int fd, const Message& message);
std::optional<Message> read_message(int fd);

}  // namespace reid
