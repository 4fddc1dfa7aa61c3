#include <gtest/gtest.h>

#include <sys/socket.h>
#include <unistd.h>

#include "message_fuzz.hpp"
#include "reid/service/protocol.hpp"
#include "test_util.hpp"

namespace reid {
namespace {

TEST(Framing, HeaderIsLengthThenType) {
  const Message m{MessageType::kIdentify, {0xAA, 0xBB, 0xCC}};
  const std::vector<std::uint8_t> want = {3, 0, 0, 0, 2, 0xAA, 0xBB, 0xCC};
  EXPECT_EQ(frame_message(m), want);
}

TEST(Framing, PartialInputNeedsMoreBytes) {
  const auto bytes = frame_message({MessageType::kOk, {1, 2, 3, 4}});
  for (std::size_t n = 0; n < bytes.size(); ++n) {
    std::size_t consumed = 99;
    EXPECT_FALSE(parse_message(std::span(bytes).first(n), consumed)) << n;
    EXPECT_EQ(consumed, 0u);
  }
}

TEST(Framing, ConsumesOneMessageAtATime) {
  auto bytes = frame_message({MessageType::kOk, {7}});
  const auto second = frame_message({MessageType::kError, {}});
  bytes.insert(bytes.end(), second.begin(), second.end());
  std::size_t consumed = 0;
  const auto a = parse_message(bytes, consumed);
  ASSERT_TRUE(a);
  EXPECT_EQ(consumed, 6u);
  const auto b = parse_message(std::span(bytes).subspan(consumed), consumed);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->type, MessageType::kError);
  EXPECT_TRUE(b->body.empty());
}

TEST(Framing, RejectsUnknownTypeAndOversizedBody) {
  std::size_t consumed = 0;
  const std::vector<std::uint8_t> unknown = {0, 0, 0, 0, 9};
  EXPECT_THROW(parse_message(unknown, consumed), ProtocolError);
  const std::vector<std::uint8_t> zero = {0, 0, 0, 0, 0};
  EXPECT_THROW(parse_message(zero, consumed), ProtocolError);
  const std::vector<std::uint8_t> huge = {0xFF, 0xFF, 0xFF, 0xFF, 1};
  EXPECT_THROW(parse_message(huge, consumed), ProtocolError);
}

TEST(Bodies, ErrorIsCodeThenText) {
  const auto m = encode(ErrorReply{2, "bad"});
  EXPECT_EQ(m.type, MessageType::kError);
  const std::vector<std::uint8_t> want = {2, 0, 'b', 'a', 'd'};
  EXPECT_EQ(m.body, want);
}

TEST(Bodies, DescriptorIsCountThenDoubles) {
  const auto m = encode(IdentifyRequest{5, {1.0}});
  ASSERT_EQ(m.body.size(), 4u + 4 + 8);
  EXPECT_EQ(m.body[0], 5);
  EXPECT_EQ(m.body[4], 1);
  double d;
  std::memcpy(&d, m.body.data() + 8, 8);
  EXPECT_EQ(d, 1.0);
}

TEST(Bodies, FuzzedMessagesRoundTripBitExactly) {
  test::MessageFuzzer fuzz(1);
  for (int i = 0; i < 10000; ++i) ASSERT_TRUE(fuzz.round_trip(i)) << "message " << i;
}

TEST(Bodies, DecodersRejectWrongTypeAndTrailingBytes) {
  const auto m = encode(IdentifyRequest{3, {1.0, 2.0}});
  EXPECT_THROW(decode_enroll(m), BadMessage);
  auto extra = m;
  extra.body.push_back(0);
  EXPECT_THROW(decode_identify(extra), BadMessage);
  auto cut = m;
  cut.body.pop_back();
  try {
    decode_identify(cut);
    FAIL();
  } catch (const BadMessage& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadRequest);
  }
}

TEST(Bodies, MalformedFrameHasItsOwnCode) {
  test::MessageFuzzer fuzz(2);
  ParseTagsRequest r{4, {1.0}, fuzz.frame()};
  auto m = encode(r);
  m.body.pop_back();
  try {
    decode_parse_tags(m);
    FAIL();
  } catch (const BadMessage& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedFrame);
  }
  // A joint with an invalid tracking state.
  m = encode(r);
  m.body.back() = 7;
  try {
    decode_parse_tags(m);
    FAIL();
  } catch (const BadMessage& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedFrame);
  }
}

TEST(Bodies, TagColorAbsentIsFF) {
  const auto m = encode(TagReply{{{"shirt", std::nullopt}, {"jeans", ColorTerm::kBlue}}});
  // count, then per tag u16 length, name, color byte
  EXPECT_EQ(m.body[4 + 2 + 5], 0xFF);
  EXPECT_EQ(m.body.back(), static_cast<std::uint8_t>(ColorTerm::kBlue));
  auto bad = m;
  bad.body.back() = 11;
  EXPECT_THROW(decode_tag_reply(bad), BadMessage);
}

TEST(WireFrame, RoundTripsImageMaskAndPose) {
  std::mt19937_64 rng(3);
  const cv::Mat rgb = test::random_rgb(rng, 7, 5);
  cv::Mat mask(7, 5, CV_8UC1, cv::Scalar(0));
  mask(cv::Rect(1, 2, 3, 4)).setTo(255);
  Skeleton2D pose;
  pose[JointId::kHead] = {{2.5, 1.25}, TrackingState::kTracked};
  pose[JointId::kFootR] = {{4.0, 6.0}, TrackingState::kInferred};
  const WireFrame f = to_wire(rgb, mask, pose);
  EXPECT_EQ(f.width, 5u);
  EXPECT_EQ(f.height, 7u);
  cv::Mat rgb2, mask2;
  Skeleton2D pose2;
  from_wire(f, rgb2, mask2, pose2);
  EXPECT_EQ(cv::norm(rgb, rgb2, cv::NORM_INF), 0.0);
  EXPECT_EQ(cv::norm(mask, mask2, cv::NORM_INF), 0.0);
  for (int j = 0; j < kJointCount; ++j) {
    EXPECT_EQ(pose.joints[static_cast<std::size_t>(j)].position.u, pose2.joints[static_cast<std::size_t>(j)].position.u);
    EXPECT_EQ(pose.joints[static_cast<std::size_t>(j)].state, pose2.joints[static_cast<std::size_t>(j)].state);
  }
}

TEST(Sockets, WriteThenReadAcrossSocketPair) {
  int fds[2];
  ASSERT_EQ(::socketpair(AF_UNIX, SOCK_STREAM, 0, fds), 0);
  const Message a = encode(EnrollRequest{9, "Ana", {0.5, -0.25}});
  const Message b = encode(ErrorReply{3, "empty"});
  write_message(fds[0], a);
  write_message(fds[0], b);
  ::close(fds[0]);
  EXPECT_EQ(read_message(fds[1]), a);
  EXPECT_EQ(read_message(fds[1]), b);
  EXPECT_FALSE(read_message(fds[1]));
  ::close(fds[1]);
}

TEST(Sockets, TruncatedStreamIsAnError) {
  int fds[2];
  ASSERT_EQ(::socketpair(AF_UNIX, SOCK_STREAM, 0, fds), 0);
  const auto bytes = frame_message(encode(EnrollReply{4}));
  ASSERT_EQ(::write(fds[0], bytes.data(), bytes.size() - 1), static_cast<ssize_t>(bytes.size() - 1));
  ::close(fds[0]);
  EXPECT_THROW(read_message(fds[1]), ProtocolError);
  ::close(fds[1]);
}

}  // namespace
}  // namespace reid
